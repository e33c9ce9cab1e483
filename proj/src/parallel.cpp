#include "sepscope/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace sepscope {

unsigned resolve_threads(std::optional<unsigned> requested) {
    if (requested && *requested > 0) return *requested;
    if (const char* env = std::getenv("SEPSCOPE_THREADS")) {
        std::string_view s(env);
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    return 1;
}

}  // namespace sepscope
