#include "nbvb/decoders.hpp"

namespace nbvb {

DecodeResult run_decoder(Algorithm alg, const BipartiteGraph& g,
                         const std::vector<wide_int>& measurements,
                         const EqualityPolicy& policy, const SignalInstance& ground_truth,
                         std::int64_t max_rounds) {
  return detail::run_decoder_impl<wide_int>(alg, g, measurements, policy, ground_truth,
                                            max_rounds);
}

DecodeResult run_decoder(Algorithm alg, const BipartiteGraph& g,
                         const std::vector<double>& measurements,
                         const EqualityPolicy& policy, const SignalInstance& ground_truth,
                         std::int64_t max_rounds) {
  return detail::run_decoder_impl<double>(alg, g, measurements, policy, ground_truth,
                                          max_rounds);
}

DecodeResult decode_instance(Algorithm alg, const BipartiteGraph& g,
                             const SignalInstance& signal, const EqualityPolicy& policy,
                             std::int64_t max_rounds) {
  if (signal.model == ValueModel::uniform_integer_exact) {
    const std::vector<wide_int> c = encode_exact(g, signal.ivals);
    return run_decoder(alg, g, c, policy, signal, max_rounds);
  }
  const std::vector<double> c = encode_real(g, signal.rvals);
  return run_decoder(alg, g, c, policy, signal, max_rounds);
}

}  // namespace nbvb
