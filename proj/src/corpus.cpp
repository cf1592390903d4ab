#include "dcx/corpus.hpp"

namespace dcx {

const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"pt", "d2", "d3", "d4", "ci2", "fat", "fat3", "prod", "triv"};
  return names;
}

FgModule canonical_module(const Algebra::Ptr& a) { return k_dual(module_free(a, 1)); }

Algebra::Ptr corpus_ring(const std::string& name, const Field& field) {
  auto q = [&](std::vector<std::string> vars, std::vector<std::string> rels) {
    return algebra_from_monomial_quotient(field, vars, rels);
  };
  if (name == "pt") return q({"x"}, {"x"});
  if (name == "d2") return q({"x"}, {"x^2"});
  if (name == "d3") return q({"x"}, {"x^3"});
  if (name == "d4") return q({"x"}, {"x^4"});
  if (name == "ci2") return q({"x", "y"}, {"x^2", "y^2"});
  if (name == "fat") return q({"x", "y"}, {"x^2", "x*y", "y^2"});
  if (name == "fat3") return q({"x", "y", "z"}, {"x^2", "x*y", "x*z", "y^2", "y*z", "z^2"});
  if (name == "prod") {
    auto fat = corpus_ring("fat", field);
    return tensor_algebras(fat, fat);
  }
  if (name == "triv") {
    auto fat = corpus_ring("fat", field);
    return trivial_extension(fat, canonical_module(fat));
  }
  throw Error(ErrorKind::ValidationError, "unknown corpus ring '" + name + "'");
}

}  // namespace dcx
