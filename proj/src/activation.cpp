#include "sepscope/activation.hpp"

#include "sepscope/errors.hpp"

#include <cmath>
#include <string>

namespace sepscope {

std::string_view to_string(ActivationKind kind) {
    switch (kind) {
    case ActivationKind::sigmoid: return "sigmoid";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::arctan: return "arctan";
    case ActivationKind::softsign: return "softsign";
    case ActivationKind::relu: return "relu";
    case ActivationKind::linear: return "linear";
    }
    return "?";
}

ActivationKind parse_activation(std::string_view text) {
    for (auto k : {ActivationKind::sigmoid, ActivationKind::tanh, ActivationKind::arctan, ActivationKind::softsign,
                   ActivationKind::relu, ActivationKind::linear})
        if (text == to_string(k)) return k;
    throw ConfigError("unknown activation '" + std::string(text) + "'");
}

bool is_smooth(ActivationKind kind) { return kind != ActivationKind::relu; }

namespace {

double logistic(double x) {
    // split by sign so exp never overflows
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

double act_value(ActivationKind kind, double x) {
    switch (kind) {
    case ActivationKind::sigmoid: return logistic(x);
    case ActivationKind::tanh: return std::tanh(x);
    case ActivationKind::arctan: return std::atan(x);
    case ActivationKind::softsign: return x / (1.0 + std::abs(x));
    case ActivationKind::relu: return x > 0 ? x : 0.0;
    case ActivationKind::linear: return x;
    }
    return 0.0;
}

double act_d1(ActivationKind kind, double x) {
    switch (kind) {
    case ActivationKind::sigmoid: {
        const double s = logistic(x);
        return s * (1.0 - s);
    }
    case ActivationKind::tanh: {
        const double t = std::tanh(x);
        return 1.0 - t * t;
    }
    case ActivationKind::arctan: return 1.0 / (1.0 + x * x);
    case ActivationKind::softsign: {
        const double u = 1.0 + std::abs(x);
        return 1.0 / (u * u);
    }
    case ActivationKind::relu: return x > 0 ? 1.0 : 0.0;
    case ActivationKind::linear: return 1.0;
    }
    return 0.0;
}

double act_d2(ActivationKind kind, double x) {
    switch (kind) {
    case ActivationKind::sigmoid: {
        const double s = logistic(x);
        return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
    case ActivationKind::tanh: {
        const double t = std::tanh(x);
        return -2.0 * t * (1.0 - t * t);
    }
    case ActivationKind::arctan: {
        const double u = 1.0 + x * x;
        return -2.0 * x / (u * u);
    }
    case ActivationKind::softsign: {
        if (x == 0.0) return 0.0;
        const double u = 1.0 + std::abs(x);
        return (x > 0 ? -2.0 : 2.0) / (u * u * u);
    }
    case ActivationKind::relu: throw UnsupportedError("relu has no second derivative");
    case ActivationKind::linear: return 0.0;
    }
    return 0.0;
}

ActValues act_eval(ActivationKind kind, double x) {
    return {act_value(kind, x), act_d1(kind, x), act_d2(kind, x)};
}

void apply_activation(ActivationKind kind, Matrix& m) {
    if (kind == ActivationKind::linear) return;
    m = m.unaryExpr([kind](double v) { return act_value(kind, v); });
}

double f_sigma(ActivationKind kind, double x, double y) {
    if (!is_smooth(kind)) throw UnsupportedError("F_sigma needs a twice differentiable activation");
    const double den = act_d1(kind, x) + act_d1(kind, y);
    if (!(den > 0.0)) throw DegenerateError("first derivatives vanish at both arguments");
    return (act_d2(kind, x) - act_d2(kind, y)) * (x - y) / den;
}

}  // namespace sepscope
