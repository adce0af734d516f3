#include "cli/model_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cli/json_locator.hpp"
#include "stromcheck/errors.hpp"

namespace stromcheck::cli {

namespace {

using json = nlohmann::json;

const std::set<std::string> kTopLevel = {"schema_version", "name",        "description",  "dimension",
                                         "structure_constants", "coframe_differentials", "complex_structure",
                                         "metric",         "omega_form",  "connections",  "fiber_metric",
                                         "pairing",        "alpha",       "expect"};

const std::set<std::string> kExpectKeys = {"kahler", "balanced", "gauduchon", "solves", "bianchi",
                                           "hym_a",  "hym_nabla", "conformally_balanced"};

std::string key_pointer(const std::string& parent, const std::string& key) { return parent + "/" + key; }
std::string index_pointer(const std::string& parent, std::size_t i) { return parent + "/" + std::to_string(i); }

class Loader {
 public:
  Loader(const std::string& text, std::string source) : source_(std::move(source)) {
    try {
      doc_ = json::parse(text);
    } catch (const json::parse_error& e) {
      int line = 1;
      for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
        if (text[i] == '\n') ++line;
      throw ModelError(source_ + ":" + std::to_string(line), std::string("JSON syntax error: ") + e.what());
    }
    locator_.emplace(text);
  }

  LoadedModel load() {
    if (!doc_.is_object()) fail("", "model file must be a JSON object");
    for (const auto& [key, value] : doc_.items())
      if (!kTopLevel.count(key)) fail(key_pointer("", key), "unknown field '" + key + "'");

    const json& version = need(doc_, "", "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion)
      fail("/schema_version", "unsupported schema_version (expected " + std::to_string(kModelSchemaVersion) + ")");
    const json& name = need(doc_, "", "name");
    if (!name.is_string()) fail("/name", "name must be a string");

    const json& dim_j = need(doc_, "", "dimension");
    if (!dim_j.is_number_integer()) fail("/dimension", "dimension must be an integer");
    dim_ = dim_j.get<int>();
    if (dim_ < 2 || dim_ % 2 != 0 || dim_ > kMaxDimension)
      fail("/dimension", "dimension must be even and between 2 and " + std::to_string(kMaxDimension));

    LieAlgebraModel alg = algebra();
    AlmostComplexStructure j = complex_structure(alg);
    MetricTensor g = metric();
    Form big_omega = holomorphic_volume(j);

    std::optional<HermitianData> h;
    try {
      h.emplace(alg, j, g, big_omega);
    } catch (const InvariantViolation& e) {
      const bool about_omega = e.invariant().find("Omega") != std::string::npos;
      fail(about_omega ? "/omega_form" : "/metric", violated(e));
    }

    LoadedModel out{name.get<std::string>(), *h, std::nullopt, {}};
    if (doc_.contains("connections")) out.strominger = strominger(*h);
    if (doc_.contains("expect")) out.expectations = expectations();
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    const int line = locator_ ? locator_->line(pointer) : 1;
    throw ModelError(source_ + ":" + std::to_string(line) + ": " + (pointer.empty() ? "/" : pointer), message);
  }

  static std::string violated(const InvariantViolation& e) { return "invariant " + std::string(e.what()); }

  const json& need(const json& obj, const std::string& pointer, const std::string& key) const {
    if (!obj.is_object() || !obj.contains(key)) fail(pointer, "missing required field '" + key + "'");
    return obj.at(key);
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    return v.get<double>();
  }

  Complex complex(const json& v, const std::string& pointer) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(pointer, "expected a number or a [re, im] pair");
  }

  int index(const json& v, const std::string& pointer, int upper) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer index");
    const int i = v.get<int>();
    if (i < 1 || i > upper) fail(pointer, "index out of range 1.." + std::to_string(upper));
    return i;
  }

  // e<k>, theta<j>, thetabar<j> as 1-forms.
  Form factor(const json& v, const std::string& pointer) const {
    if (!v.is_string()) fail(pointer, "factor must be a string like \"e1\", \"theta2\" or \"thetabar3\"");
    const std::string s = v.get<std::string>();
    auto parse_index = [&](std::size_t prefix, int upper) {
      const std::string digits = s.substr(prefix);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        fail(pointer, "malformed factor '" + s + "'");
      const int i = std::stoi(digits);
      if (i < 1 || i > upper) fail(pointer, "factor index out of range in '" + s + "'");
      return i;
    };
    if (s.rfind("thetabar", 0) == 0) return complex_coframe(dim_, parse_index(8, dim_ / 2) - 1, true);
    if (s.rfind("theta", 0) == 0) return complex_coframe(dim_, parse_index(5, dim_ / 2) - 1);
    if (s.rfind("e", 0) == 0) return Form::basis(dim_, {parse_index(1, dim_)});
    fail(pointer, "unknown factor '" + s + "'");
  }

  Form terms(const json& list, const std::string& pointer) const {
    if (!list.is_array()) fail(pointer, "expected a list of terms");
    Form out(dim_);
    for (std::size_t t = 0; t < list.size(); ++t) {
      const std::string tp = index_pointer(pointer, t);
      const json& term = list[t];
      const Complex c = complex(need(term, tp, "coeff"), key_pointer(tp, "coeff"));
      const json& factors = need(term, tp, "factors");
      if (!factors.is_array()) fail(key_pointer(tp, "factors"), "factors must be a list");
      Form product = Form::scalar(dim_, 1.0);
      for (std::size_t f = 0; f < factors.size(); ++f)
        product = wedge(product, factor(factors[f], index_pointer(key_pointer(tp, "factors"), f)));
      out += c * product;
    }
    return out;
  }

  Eigen::MatrixXd real_matrix(const json& m, const std::string& pointer, int size) const {
    if (!m.is_array() || static_cast<int>(m.size()) != size) fail(pointer, "expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    Eigen::MatrixXd out(size, size);
    for (int r = 0; r < size; ++r) {
      const std::string rp = index_pointer(pointer, static_cast<std::size_t>(r));
      const json& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != size) fail(rp, "matrix row has the wrong length");
      for (int c = 0; c < size; ++c) out(r, c) = number(row[static_cast<std::size_t>(c)], index_pointer(rp, static_cast<std::size_t>(c)));
    }
    return out;
  }

  Eigen::MatrixXcd complex_matrix(const json& m, const std::string& pointer, int size) const {
    if (!m.is_array() || static_cast<int>(m.size()) != size) fail(pointer, "expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    Eigen::MatrixXcd out(size, size);
    for (int r = 0; r < size; ++r) {
      const std::string rp = index_pointer(pointer, static_cast<std::size_t>(r));
      const json& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != size) fail(rp, "matrix row has the wrong length");
      for (int c = 0; c < size; ++c) out(r, c) = complex(row[static_cast<std::size_t>(c)], index_pointer(rp, static_cast<std::size_t>(c)));
    }
    return out;
  }

  LieAlgebraModel algebra() const {
    const bool sc = doc_.contains("structure_constants");
    const bool cd = doc_.contains("coframe_differentials");
    if (sc == cd) fail("", "exactly one of structure_constants or coframe_differentials is required");
    std::optional<LieAlgebraModel> alg;
    const std::string pointer = sc ? "/structure_constants" : "/coframe_differentials";
    try {
      if (sc) {
        const json& list = doc_.at("structure_constants");
        if (!list.is_array()) fail(pointer, "expected a list of [i, j, k, value]");
        std::vector<StructureConstant> constants;
        for (std::size_t e = 0; e < list.size(); ++e) {
          const std::string ep = index_pointer(pointer, e);
          const json& entry = list[e];
          if (!entry.is_array() || entry.size() != 4) fail(ep, "expected [i, j, k, value]");
          constants.push_back({index(entry[0], index_pointer(ep, 0), dim_) - 1, index(entry[1], index_pointer(ep, 1), dim_) - 1,
                               index(entry[2], index_pointer(ep, 2), dim_) - 1, number(entry[3], index_pointer(ep, 3))});
        }
        alg.emplace(dim_, constants);
      } else {
        alg.emplace(coframe());
      }
    } catch (const InvariantViolation& e) {
      fail(pointer, violated(e));
    }
    const double jacobi = check_jacobi(*alg);
    if (jacobi > kStructureTolerance)
      fail(pointer, "invariant check_jacobi violated: Jacobi residual " + std::to_string(jacobi));
    const double dd = d_squared_residual(*alg);
    if (dd > kStructureTolerance) fail(pointer, "invariant d^2 = 0 violated: residual " + std::to_string(dd));
    return *alg;
  }

  LieAlgebraModel coframe() const {
    const std::string pointer = "/coframe_differentials";
    const json& obj = doc_.at("coframe_differentials");
    if (!obj.is_object()) fail(pointer, "expected an object keyed by theta<j> or e<k>");
    bool complex_keys = false;
    bool real_keys = false;
    std::vector<Form> d_theta(static_cast<std::size_t>(dim_ / 2), Form(dim_));
    std::vector<Form> d_basis(static_cast<std::size_t>(dim_), Form(dim_));
    for (const auto& [key, value] : obj.items()) {
      const std::string kp = key_pointer(pointer, key);
      const Form lhs = factor(json(key), kp);
      const Form rhs = terms(value, kp);
      if (key.rfind("thetabar", 0) == 0) fail(kp, "give d theta<j>; d thetabar<j> follows by conjugation");
      if (key.rfind("theta", 0) == 0) {
        complex_keys = true;
        d_theta[static_cast<std::size_t>(std::stoi(key.substr(5)) - 1)] = rhs;
      } else {
        real_keys = true;
        if (!rhs.is_real()) fail(kp, "differentials of real basis forms must be real");
        d_basis[static_cast<std::size_t>(std::stoi(key.substr(1)) - 1)] = rhs;
      }
      (void)lhs;
    }
    if (complex_keys && real_keys) fail(pointer, "do not mix theta<j> and e<k> keys");
    for (std::size_t i = 0; i < d_basis.size() && real_keys; ++i)
      if (!d_basis[i].is_zero() && d_basis[i].degree() != 2) fail(pointer, "d of a 1-form must be a 2-form");
    for (std::size_t i = 0; i < d_theta.size() && complex_keys; ++i)
      if (!d_theta[i].is_zero() && d_theta[i].degree() != 2) fail(pointer, "d of a 1-form must be a 2-form");
    return real_keys ? LieAlgebraModel::from_differentials(d_basis) : LieAlgebraModel::from_complex_coframe(d_theta);
  }

  AlmostComplexStructure complex_structure(const LieAlgebraModel& alg) const {
    const std::string pointer = "/complex_structure";
    const json& v = need(doc_, "", "complex_structure");
    std::optional<AlmostComplexStructure> j;
    if (v.is_string()) {
      if (v.get<std::string>() != "standard") fail(pointer, "expected \"standard\" or a matrix");
      j.emplace(AlmostComplexStructure::standard(dim_));
    } else {
      try {
        j.emplace(AlmostComplexStructure::from_matrix(real_matrix(v, pointer, dim_)));
      } catch (const InvariantViolation& e) {
        fail(pointer, violated(e));
      }
    }
    const double n = nijenhuis(alg, *j);
    if (n > kStructureTolerance)
      fail(pointer, "invariant nijenhuis violated: J is not integrable (residual " + std::to_string(n) + ")");
    return *j;
  }

  MetricTensor metric() const {
    const std::string pointer = "/metric";
    const json& v = need(doc_, "", "metric");
    try {
      if (v.is_string()) {
        if (v.get<std::string>() != "identity") fail(pointer, "expected \"identity\", {\"scale\": c} or a matrix");
        return MetricTensor::identity(dim_);
      }
      if (v.is_object()) {
        const double c = number(need(v, pointer, "scale"), key_pointer(pointer, "scale"));
        if (!(c > 0.0)) fail(key_pointer(pointer, "scale"), "invariant metric positive definite violated: scale must be positive");
        return MetricTensor::identity(dim_).scaled(c);
      }
      return MetricTensor::from_matrix(real_matrix(v, pointer, dim_));
    } catch (const InvariantViolation& e) {
      fail(pointer, violated(e));
    }
  }

  Form holomorphic_volume(const AlmostComplexStructure& j) const {
    if (doc_.contains("omega_form")) return terms(doc_.at("omega_form"), "/omega_form");
    if ((j.matrix() - AlmostComplexStructure::standard(dim_).matrix()).cwiseAbs().maxCoeff() != 0.0)
      fail("/complex_structure", "omega_form is required when complex_structure is not \"standard\"");
    Form out = Form::scalar(dim_, 1.0);
    for (int k = 0; k < dim_ / 2; ++k) out = wedge(out, complex_coframe(dim_, k));
    return out;
  }

  Connection connection(const HermitianData& h, const json& spec, const std::string& pointer, bool nabla) const {
    if (!spec.is_object()) fail(pointer, "connection must be an object with a \"type\"");
    const json& type_j = need(spec, pointer, "type");
    if (!type_j.is_string()) fail(key_pointer(pointer, "type"), "type must be a string");
    const std::string type = type_j.get<std::string>();
    std::optional<int> rank;
    if (spec.contains("rank")) rank = index(spec.at("rank"), key_pointer(pointer, "rank"), kMaxDimension * kMaxDimension);
    try {
      if (type == "bismut" || type == "chern" || type == "levi_civita") {
        if (rank && *rank != dim_) fail(key_pointer(pointer, "rank"), "tangent connections have rank " + std::to_string(dim_));
        if (type == "bismut") return bismut(h);
        if (type == "chern") return chern(h);
        return levi_civita(h);
      }
      if (type == "flat") {
        if (nabla) {
          if (rank && *rank != dim_) fail(key_pointer(pointer, "rank"), "nabla must have rank " + std::to_string(dim_));
          return Connection::flat(dim_, dim_, true);
        }
        if (!rank) fail(pointer, "flat bundle connections need a rank");
        return Connection::flat(dim_, *rank);
      }
      if (type == "matrices") {
        if (!rank) fail(pointer, "matrix connections need a rank");
        if (nabla && *rank != dim_) fail(key_pointer(pointer, "rank"), "nabla must have rank " + std::to_string(dim_));
        const std::string mp = key_pointer(pointer, "matrices");
        const json& list = need(spec, pointer, "matrices");
        if (!list.is_array() || static_cast<int>(list.size()) != dim_)
          fail(mp, "expected one matrix per basis direction (" + std::to_string(dim_) + ")");
        std::vector<Eigen::MatrixXcd> coeffs;
        for (int i = 0; i < dim_; ++i)
          coeffs.push_back(complex_matrix(list[static_cast<std::size_t>(i)], index_pointer(mp, static_cast<std::size_t>(i)), *rank));
        return Connection(dim_, *rank, std::move(coeffs), nabla);
      }
    } catch (const ModelError&) {
      throw;
    } catch (const InvariantViolation& e) {
      fail(pointer, violated(e));
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
    fail(key_pointer(pointer, "type"), "unknown connection type '" + type + "' (bismut, chern, levi_civita, flat, matrices)");
  }

  StromingerModel strominger(const HermitianData& h) const {
    const std::string pointer = "/connections";
    const json& conns = doc_.at("connections");
    if (!conns.is_object()) fail(pointer, "connections must be an object with \"nabla\" and \"A\"");
    for (const auto& [key, value] : conns.items())
      if (key != "nabla" && key != "A") fail(key_pointer(pointer, key), "unknown connection '" + key + "'");
    Connection nabla = connection(h, need(conns, pointer, "nabla"), key_pointer(pointer, "nabla"), true);
    Connection a = connection(h, need(conns, pointer, "A"), key_pointer(pointer, "A"), false);

    std::array<double, 2> weights{1.0, -1.0};
    if (doc_.contains("pairing")) {
      const json& p = doc_.at("pairing");
      const json& w = need(p, "/pairing", "weights");
      if (!w.is_array() || w.size() != 2) fail("/pairing/weights", "expected [w_T, w_A]");
      weights = {number(w[0], "/pairing/weights/0"), number(w[1], "/pairing/weights/1")};
    }

    std::optional<double> alpha;
    const json& alpha_j = need(doc_, "", "alpha");
    if (alpha_j.is_string()) {
      if (alpha_j.get<std::string>() != "solve") fail("/alpha", "alpha must be a number or \"solve\"");
    } else {
      alpha = number(alpha_j, "/alpha");
    }

    std::optional<Eigen::MatrixXcd> fiber;
    if (doc_.contains("fiber_metric")) fiber = complex_matrix(doc_.at("fiber_metric"), "/fiber_metric", a.rank());

    try {
      return StromingerModel(h, std::move(nabla), std::move(a), alpha, weights, std::move(fiber));
    } catch (const ModelError&) {
      throw;
    } catch (const InvariantViolation& e) {
      fail(e.invariant().find("fibre") != std::string::npos ? "/fiber_metric" : pointer, violated(e));
    } catch (const Error& e) {
      fail(pointer, e.what());
    }
  }

  std::map<std::string, bool> expectations() const {
    const json& e = doc_.at("expect");
    if (!e.is_object()) fail("/expect", "expect must be an object of booleans");
    std::map<std::string, bool> out;
    for (const auto& [key, value] : e.items()) {
      const std::string kp = key_pointer("/expect", key);
      if (!kExpectKeys.count(key)) fail(kp, "unknown expectation '" + key + "'");
      if (!value.is_boolean()) fail(kp, "expectations are booleans");
      out[key] = value.get<bool>();
    }
    return out;
  }

  std::string source_;
  json doc_;
  std::optional<JsonLocator> locator_;
  int dim_ = 0;
};

}  // namespace

LoadedModel load_model(const std::string& text, const std::string& source) { return Loader(text, source).load(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedModel load_model_file(const std::string& path) { return load_model(read_file(path), path); }

}  // namespace stromcheck::cli
