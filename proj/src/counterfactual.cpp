#include "densecf/counterfactual.hpp"

#include "densecf/error.hpp"

namespace densecf {

CounterfactualResult CounterfactualResult::make_found(std::string method, Oracle& oracle, const Graph& input,
                                                      Label input_label, Graph counterfactual,
                                                      std::size_t iterations, std::uint64_t oracle_calls) {
  if (oracle.audit(counterfactual) == input_label)
    fail(ErrorKind::Internal, method + ": counterfactual is not classified opposite to the input");
  CounterfactualResult r;
  r.method = std::move(method);
  r.found = true;
  r.input_label = input_label;
  r.edits = edit_list_between(input, counterfactual);
  r.distance = r.edits.size();
  // A valid counterfactual differs from the input, so the union is nonempty.
  r.distance_ratio = edit_distance_ratio(input, counterfactual);
  r.counterfactual = std::move(counterfactual);
  r.iterations = iterations;
  r.oracle_calls = oracle_calls;
  return r;
}

CounterfactualResult CounterfactualResult::make_not_found(std::string method, Label input_label,
                                                          std::size_t iterations, std::uint64_t oracle_calls,
                                                          std::string diagnostic) {
  CounterfactualResult r;
  r.method = std::move(method);
  r.input_label = input_label;
  r.iterations = iterations;
  r.oracle_calls = oracle_calls;
  r.diagnostic = std::move(diagnostic);
  return r;
}

}  // namespace densecf
