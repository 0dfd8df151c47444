#include "ganfor/adam.hpp"

#include <cmath>

#include "ganfor/kernels.hpp"

namespace ganfor {

template <typename T>
void adam_step(std::vector<std::span<T>>& params,
               const std::vector<std::span<const T>>& grads, AdamState<T>& state,
               const AdamHyper<T>& hyper) {
  hyper.validate();
  require(params.size() == grads.size(), "config.optim",
          "params/grads view count mismatch");
  size_t total = 0;
  for (size_t i = 0; i < params.size(); ++i) {
    require(params[i].size() == grads[i].size(), "config.optim",
            "params/grads block " + std::to_string(i) + " size mismatch");
    total += params[i].size();
  }
  require(state.m.size() == total && state.v.size() == total, "config.optim",
          "adam state size does not match parameters");
  require(state.t < (1ull << 53), "config.optim", "adam step count overflow");

  state.t += 1;
  const double t = static_cast<double>(state.t);
  const T c1 = static_cast<T>(1.0 / (1.0 - std::pow(static_cast<double>(hyper.beta1), t)));
  const T c2 = static_cast<T>(1.0 / (1.0 - std::pow(static_cast<double>(hyper.beta2), t)));

  size_t off = 0;
  for (size_t i = 0; i < params.size(); ++i) {
    kernels::adam_step(params[i].data(), grads[i].data(), state.m.data() + off,
                       state.v.data() + off, params[i].size(), hyper.lr, hyper.beta1,
                       hyper.beta2, c1, c2, hyper.eps);
    off += params[i].size();
  }
}

template void adam_step<float>(std::vector<std::span<float>>&,
                               const std::vector<std::span<const float>>&,
                               AdamState<float>&, const AdamHyper<float>&);
template void adam_step<double>(std::vector<std::span<double>>&,
                                const std::vector<std::span<const double>>&,
                                AdamState<double>&, const AdamHyper<double>&);

}  // namespace ganfor
