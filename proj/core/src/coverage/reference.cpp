#include "drpkit/coverage/reference.hpp"

#include <sstream>

#include "drpkit/error.hpp"

namespace drpkit::coverage {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string describe(const ReferencePolicy& policy) {
  return std::visit(Overloaded{
                        [](const UnitHypercubeUniform&) { return std::string("hypercube"); },
                        [](const PriorDraw& p) { return p.label; },
                        [](const DataShift& s) {
                          std::ostringstream os;
                          os << "datashift:" << s.coordinate << "," << s.half_width;
                          return os.str();
                        },
                    },
                    policy);
}

Vector sample_reference(const ReferencePolicy& policy, const Observation& x, std::size_t dim,
                        const NormalizationMap& normalization, SeededRng& rng) {
  if (normalization.dim() != dim) {
    throw DimensionError("sample_reference: normalization map has the wrong dimension");
  }
  return std::visit(
      Overloaded{
          [&](const UnitHypercubeUniform&) {
            Vector r(dim);
            for (auto& v : r) v = rng.uniform();
            return r;
          },
          [&](const PriorDraw& p) {
            if (!p.draw) throw PolicyError("prior reference policy has no sampler");
            const Vector raw = p.draw(rng);
            if (raw.size() != dim) {
              throw PolicyError("prior reference draw has " + std::to_string(raw.size()) +
                                " entries, expected " + std::to_string(dim));
            }
            return normalization.apply(raw);
          },
          [&](const DataShift& s) {
            if (dim != 1) {
              throw PolicyError("datashift reference policy needs a scalar parameter, got D = " +
                                std::to_string(dim));
            }
            if (s.coordinate >= x.size()) {
              throw PolicyError("datashift reference policy reads x[" +
                                std::to_string(s.coordinate) + "] but the observation has " +
                                std::to_string(x.size()) + " entries");
            }
            if (!(s.half_width >= 0.0)) throw PolicyError("datashift half-width must be >= 0");
            double raw = x[s.coordinate];
            if (s.half_width > 0.0) raw += rng.uniform(-s.half_width, s.half_width);
            return Vector{normalization.apply(0, raw)};
          },
      },
      policy);
}

}  // namespace drpkit::coverage
