#pragma once

#include "sepscope/types.hpp"

#include <string_view>

namespace sepscope {

/// Monotone activations. `linear` is the identity map, kept for invariance
/// checks against the nonlinear kinds.
enum class ActivationKind { sigmoid, tanh, arctan, softsign, relu, linear };

std::string_view to_string(ActivationKind kind);
ActivationKind parse_activation(std::string_view text);

/// False for relu, whose second derivative does not exist at 0.
bool is_smooth(ActivationKind kind);

struct ActValues {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

double act_value(ActivationKind kind, double x);
/// relu' is taken as 0 at x = 0.
double act_d1(ActivationKind kind, double x);
/// Throws UnsupportedError for relu. softsign'' jumps from +2 to -2 at 0 and
/// is reported as 0 there.
double act_d2(ActivationKind kind, double x);
ActValues act_eval(ActivationKind kind, double x);

/// Elementwise in place.
void apply_activation(ActivationKind kind, Matrix& m);

/// (s''(x) - s''(y)) (x - y) / (s'(x) + s'(y)). Throws DegenerateError when
/// the denominator is not positive, UnsupportedError for relu.
double f_sigma(ActivationKind kind, double x, double y);

}  // namespace sepscope
