#include "dfi/report.hpp"

#include <sstream>

#include "dfi/errors.hpp"

namespace dfi {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::PrecisionCapExceeded: return "PrecisionCapExceeded";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::NotSInteger: return "NotSInteger";
    case ErrorCode::EmbeddingUndefined: return "EmbeddingUndefined";
    case ErrorCode::CoefficientNotInK: return "CoefficientNotInK";
    case ErrorCode::NotSIntegral: return "NotSIntegral";
    case ErrorCode::EmptyFactorList: return "EmptyFactorList";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RepeatedRoots: return "RepeatedRoots";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::FactorVanishes: return "FactorVanishes";
    case ErrorCode::GeneralPositionFailure: return "GeneralPositionFailure";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

Json rational_json(const BigRational& q) { return rational_str(q); }

Json element_json(const FieldElement& x) {
  Json j;
  j["field"] = poly_str(x.field().defining_poly());
  Json coords = Json::array();
  for (const auto& c : x.coords()) coords.push_back(rational_str(c));
  j["coords"] = coords;
  return j;
}

Json point_json(const Point& x) {
  Json j = Json::array();
  for (const auto& c : x) j.push_back(element_json(c));
  return j;
}

Json interval_json(const LogInterval& iv) {
  Json j;
  j["lo"] = rational_str(iv.lower());
  j["hi"] = rational_str(iv.upper());
  return j;
}

Json class_json(const PointClass& cls) {
  Json j;
  j["kind"] = "class";
  j["rep"] = point_json(cls.rep);
  j["norm_value"] = rational_json(cls.norm_value);
  j["height_log"] = interval_json(cls.height_log);
  Json members = Json::array();
  for (const auto& m : cls.members) members.push_back(point_json(m));
  j["members"] = members;
  return j;
}

namespace {

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

}  // namespace

std::string solution_jsonl(const SolutionReport& r,
                           const std::string& command) {
  std::string out;
  Json head;
  head["kind"] = "summary";
  head["command"] = command;
  head["scanned"] = r.scanned;
  head["accepted"] = r.accepted.size();
  head["borderline"] = r.borderline.size();
  head["classes"] = r.classes.size();
  if (r.beyond_regime) head["beyond_regime"] = true;
  out += dump_line(head);
  for (const auto& cls : r.classes) out += dump_line(class_json(cls));
  for (const auto& x : r.borderline) {
    Json j;
    j["kind"] = "borderline";
    j["point"] = point_json(x);
    out += dump_line(j);
  }
  return out;
}

std::string profile_jsonl(const std::vector<ProfileRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    Json j;
    j["kind"] = "profile_row";
    j["bound"] = row.bound;
    j["classes"] = row.class_count;
    j["borderline"] = row.borderline_count;
    out += dump_line(j);
  }
  return out;
}

std::string cover_jsonl(const SubspaceCover& cover,
                        const std::vector<Point>& points) {
  std::string out;
  Json head;
  head["kind"] = "cover_summary";
  head["points"] = points.size();
  head["subspaces"] = cover.subspaces.size();
  out += dump_line(head);
  for (size_t i = 0; i < cover.subspaces.size(); ++i) {
    const auto& sub = cover.subspaces[i];
    Json j;
    j["kind"] = "subspace";
    j["index"] = i;
    j["dimension"] = sub.basis.size();
    Json basis = Json::array();
    for (const auto& b : sub.basis) basis.push_back(point_json(b));
    j["basis"] = basis;
    j["member_indices"] = sub.member_indices;
    out += dump_line(j);
  }
  return out;
}

std::string sequence_jsonl(const std::vector<SequenceRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    Json j;
    j["kind"] = "sequence_row";
    j["n"] = row.n;
    if (row.skipped) {
      j["skipped"] = true;
      j["note"] = row.note;
      out += dump_line(j);
      continue;
    }
    j["form_height"] = interval_json(row.form_height);
    Json reps = Json::array();
    for (size_t i = 0; i < row.report.classes.size(); ++i) {
      Json r;
      r["rep"] = point_json(row.report.classes[i].rep);
      r["rep_height"] = interval_json(row.rep_heights[i]);
      reps.push_back(r);
    }
    j["classes"] = reps;
    j["scanned"] = row.report.scanned;
    j["borderline"] = row.report.borderline.size();
    out += dump_line(j);
  }
  return out;
}

std::string point_str(const Point& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += x[i].str();
  }
  return s + ")";
}

std::string solution_table(const SolutionReport& r) {
  std::ostringstream os;
  os << "scanned " << r.scanned << ", accepted " << r.accepted.size()
     << ", borderline " << r.borderline.size() << ", classes "
     << r.classes.size() << "\n";
  if (r.beyond_regime)
    os << "warning: right-hand degree is outside the finiteness regime\n";
  for (size_t i = 0; i < r.classes.size(); ++i) {
    const auto& cls = r.classes[i];
    os << "  class " << i << ": rep " << point_str(cls.rep) << "  N_S = "
       << rational_str(cls.norm_value) << "  log H_S in "
       << cls.height_log.str(12) << "  (" << cls.members.size()
       << " member" << (cls.members.size() == 1 ? "" : "s") << ")\n";
  }
  for (const auto& x : r.borderline)
    os << "  borderline: " << point_str(x) << "\n";
  return os.str();
}

std::string profile_table(const std::vector<ProfileRow>& rows) {
  std::ostringstream os;
  os << "bound       classes  borderline\n";
  for (const auto& row : rows) {
    os << "  " << row.bound;
    for (int pad = std::to_string(row.bound).size(); pad < 10; ++pad)
      os << ' ';
    os << row.class_count << "        " << row.borderline_count << "\n";
  }
  return os.str();
}

std::string cover_table(const SubspaceCover& cover,
                        const std::vector<Point>& points) {
  std::ostringstream os;
  os << points.size() << " point" << (points.size() == 1 ? "" : "s")
     << " covered by " << cover.subspaces.size() << " subspace"
     << (cover.subspaces.size() == 1 ? "" : "s") << "\n";
  for (size_t i = 0; i < cover.subspaces.size(); ++i) {
    const auto& sub = cover.subspaces[i];
    os << "  subspace " << i << " (dim " << sub.basis.size() << "):";
    for (size_t idx : sub.member_indices)
      os << " " << point_str(points[idx]);
    os << "\n";
  }
  return os.str();
}

std::string sequence_table(const std::vector<SequenceRow>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    os << "n = " << row.n << ": ";
    if (row.skipped) {
      os << "skipped (" << row.note << ")\n";
      continue;
    }
    os << "h(F_n) in " << row.form_height.str(12) << ", "
       << row.report.classes.size() << " class"
       << (row.report.classes.size() == 1 ? "" : "es") << "\n";
    for (size_t i = 0; i < row.report.classes.size(); ++i) {
      os << "    rep " << point_str(row.report.classes[i].rep)
         << "  h(x) in " << row.rep_heights[i].str(12) << "\n";
    }
  }
  return os.str();
}

}  // namespace dfi
