#include "chatelet/report.hpp"

namespace chatelet {

namespace {

std::string inv_name(Inv i) { return i == Inv::Half ? "1/2" : "0"; }

ordered_json analysis_row(const LocalAnalysis& la) {
  ordered_json row;
  row["place"] = la.place.to_string();
  row["solvable"] = la.solvable;
  if (la.invariants_known) {
    std::vector<std::string> invs;
    for (const auto& i : la.invariants) invs.push_back(inv_name(i));
    row["invariants"] = invs;
  } else {
    row["invariants"] = nullptr;
  }
  row["certificate"] = la.certificate;
  return row;
}

ordered_json rat_json(const Rat& q) { return rat_to_string(q); }

ordered_json nf_json(const NFElement& e) {
  if (e.is_rational()) return rat_json(e.rational_value());
  ordered_json a = ordered_json::array();
  for (const auto& c : e.coords) a.push_back(rat_to_string(c));
  return a;
}

ordered_json nfpoly_json(const NFPoly& f) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i <= f.degree(); ++i) a.push_back(nf_json(f.coeff(i)));
  return a;
}

Rat rat_from(const ordered_json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw invalid_input("expected a rational (integer or \"p/q\" string)");
}

NFElement nf_from(const NumberFieldPtr& F, const ordered_json& j) {
  if (j.is_array()) {
    std::vector<Rat> coords;
    for (const auto& c : j) coords.push_back(rat_from(c));
    coords.resize(F->degree(), Rat(0));
    return F->from_coords(std::move(coords));
  }
  return F->from_rational(rat_from(j));
}

NFPoly nfpoly_from(const NumberFieldPtr& F, const ordered_json& j) {
  if (!j.is_array()) throw invalid_input("polynomial must be a coefficient list");
  std::vector<NFElement> c;
  for (const auto& e : j) c.push_back(nf_from(F, e));
  return NFPoly::make(F, std::move(c));
}

std::string forced_sum_name(Verdict::ForcedSum s) {
  switch (s) {
    case Verdict::Sum0:
      return "0";
    case Verdict::SumHalf:
      return "1/2";
    case Verdict::Mixed:
      return "mixed";
  }
  return "?";
}

}  // namespace

ordered_json surface_to_json(const ChateletSurface& V) {
  ordered_json j;
  if (!V.field->is_rational_field()) {
    ordered_json f = ordered_json::array();
    const RatPoly& fp = V.field->defining_poly();
    for (int i = 0; i <= fp.degree(); ++i) f.push_back(num(fp[i]).get_str());
    j["field"] = f;
  }
  j["a"] = nf_json(V.a);
  j["P"] = nfpoly_json(V.P);
  if (V.fac) {
    ordered_json fac;
    fac["k"] = nf_json(V.fac->k);
    fac["f1"] = nfpoly_json(V.fac->f1);
    fac["f2"] = nfpoly_json(V.fac->f2);
    j["factorization"] = fac;
  }
  return j;
}

NumberFieldPtr field_from_json(const ordered_json& j) {
  if (j.is_null()) return NumberField::rationals();
  if (!j.is_array()) throw invalid_input("field must be an integer coefficient list");
  std::vector<Rat> c;
  for (const auto& e : j) c.push_back(rat_from(e));
  return NumberField::create(RatPoly(std::move(c)));
}

ChateletSurface surface_from_json(const ordered_json& j) {
  NumberFieldPtr F =
      j.contains("field") ? field_from_json(j.at("field")) : NumberField::rationals();
  if (!j.contains("a") || !j.contains("P"))
    throw invalid_input("surface file needs \"a\" and \"P\"");
  NFElement a = nf_from(F, j.at("a"));
  NFPoly P = nfpoly_from(F, j.at("P"));
  std::optional<Factorization> fac;
  if (j.contains("factorization")) {
    const auto& fj = j.at("factorization");
    NFElement k =
        fj.contains("k") ? nf_from(F, fj.at("k")) : F->one();
    fac = Factorization{k, nfpoly_from(F, fj.at("f1")), nfpoly_from(F, fj.at("f2"))};
  }
  return ChateletSurface::make(F, a, P, std::move(fac));
}

ordered_json report_of_verdict(const ChateletSurface& V, const Verdict& verdict,
                               long elapsed_ms) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["input"] = surface_to_json(V);
  j["equation"] = V.equation();
  ordered_json places = ordered_json::array();
  for (const auto& la : verdict.table) places.push_back(analysis_row(la));
  j["places"] = places;
  ordered_json unsupported = ordered_json::array();
  for (const auto& [w, why] : verdict.unsupported) {
    ordered_json u;
    u["place"] = w.to_string();
    u["reason"] = why;
    unsupported.push_back(u);
  }
  j["unsupported_places"] = unsupported;
  j["adelic_nonempty"] = verdict.adelic_nonempty;
  j["forced_sum"] = forced_sum_name(verdict.forced_sum);
  j["verdict"] = verdict.classification_name();
  {
    ordered_json w = ordered_json::array();
    for (const auto& p : verdict.witness_places) w.push_back(p.to_string());
    j["witness_places"] = w;
  }
  if (verdict.rational_point) {
    ordered_json pt = ordered_json::array();
    for (const auto& c : *verdict.rational_point) pt.push_back(rat_to_string(c));
    j["rational_point"] = pt;
  } else {
    j["rational_point"] = nullptr;
  }
  j["partial"] = verdict.partial;
  j["notes"] = verdict.notes;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

ordered_json report_of_extension(const ChateletSurface& V, const NumberFieldPtr& L,
                                 const ExtensionAnalysis& ext, long elapsed_ms) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["input"] = surface_to_json(V);
  {
    ordered_json f = ordered_json::array();
    const RatPoly& fp = L->defining_poly();
    for (int i = 0; i <= fp.degree(); ++i) f.push_back(num(fp[i]).get_str());
    j["extension_field"] = f;
  }
  ordered_json places = ordered_json::array();
  for (const auto& la : ext.entries) places.push_back(analysis_row(la));
  j["places"] = places;
  j["adelic_nonempty"] = ext.adelic_nonempty;
  j["forced_sum"] = forced_sum_name(ext.forced_sum);
  j["half_count"] = ext.half_count;
  j["no_rational_point_by_reciprocity"] = ext.no_rational_point_by_reciprocity;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

ordered_json constraint_set_to_json(const ConstraintSet& cs) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cs.constraints) {
    ordered_json e;
    switch (c.kind) {
      case LocalConstraint::SignAt:
        e["kind"] = "sign_at";
        e["sign"] = c.sign;
        break;
      case LocalConstraint::RealRange:
        e["kind"] = "real_range";
        e["lo"] = c.lo.kind == RealBound::MinusInf ? ordered_json(nullptr)
                                                   : ordered_json(rat_to_string(c.lo.value));
        e["hi"] = c.hi.kind == RealBound::PlusInf ? ordered_json(nullptr)
                                                  : ordered_json(rat_to_string(c.hi.value));
        break;
      case LocalConstraint::SquareAt:
        e["kind"] = "square_at";
        e["place"] = c.place.to_string();
        break;
      case LocalConstraint::NonsquareAt:
        e["kind"] = "nonsquare_at";
        e["place"] = c.place.to_string();
        break;
      case LocalConstraint::ValParity:
        e["kind"] = "val_parity";
        e["p"] = c.place.p.get_str();
        e["parity"] = c.parity;
        break;
      case LocalConstraint::ValEquals:
        e["kind"] = "val_equals";
        e["p"] = c.place.p.get_str();
        e["n"] = c.n;
        break;
      case LocalConstraint::ValShifted:
        e["kind"] = "val_shifted";
        e["p"] = c.place.p.get_str();
        e["shift"] = rat_to_string(c.shift);
        e["n"] = c.n;
        break;
      case LocalConstraint::UnitAt:
        e["kind"] = "unit_at";
        e["p"] = c.place.p.get_str();
        break;
      case LocalConstraint::HilbertEq:
        e["kind"] = "hilbert_eq";
        e["place"] = c.place.to_string();
        e["ref"] = rat_to_string(c.ref);
        e["target"] = c.target;
        break;
      case LocalConstraint::IntegralOutside: {
        e["kind"] = "integral_outside";
        ordered_json s = ordered_json::array();
        for (const auto& p : c.support) s.push_back(p.get_str());
        e["support"] = s;
        break;
      }
    }
    arr.push_back(e);
  }
  ordered_json j;
  j["constraints"] = arr;
  ordered_json ds = ordered_json::array();
  for (const auto& p : cs.denominator_support) ds.push_back(p.get_str());
  j["denominator_support"] = ds;
  return j;
}

namespace {

QPlace place_from_string(const std::string& s) {
  if (s == "inf") return QPlace::inf();
  return QPlace::prime(Int(s.c_str()));
}

}  // namespace

ConstraintSet constraint_set_from_json(const ordered_json& j) {
  ConstraintSet cs;
  for (const auto& e : j.at("constraints")) {
    std::string kind = e.at("kind").get<std::string>();
    if (kind == "sign_at") {
      cs.constraints.push_back(LocalConstraint::sign_at(e.at("sign").get<int>()));
    } else if (kind == "real_range") {
      RealBound lo = e.at("lo").is_null()
                         ? RealBound::minus_inf()
                         : RealBound::at(parse_rat(e.at("lo").get<std::string>()));
      RealBound hi = e.at("hi").is_null()
                         ? RealBound::plus_inf()
                         : RealBound::at(parse_rat(e.at("hi").get<std::string>()));
      cs.constraints.push_back(LocalConstraint::real_range(lo, hi));
    } else if (kind == "square_at") {
      cs.constraints.push_back(
          LocalConstraint::square_at(place_from_string(e.at("place").get<std::string>())));
    } else if (kind == "nonsquare_at") {
      cs.constraints.push_back(LocalConstraint::nonsquare_at(
          place_from_string(e.at("place").get<std::string>())));
    } else if (kind == "val_parity") {
      cs.constraints.push_back(LocalConstraint::val_parity(
          Int(e.at("p").get<std::string>().c_str()), e.at("parity").get<int>()));
    } else if (kind == "val_equals") {
      cs.constraints.push_back(LocalConstraint::val_equals(
          Int(e.at("p").get<std::string>().c_str()), e.at("n").get<long>()));
    } else if (kind == "val_shifted") {
      cs.constraints.push_back(LocalConstraint::val_shifted(
          Int(e.at("p").get<std::string>().c_str()),
          parse_rat(e.at("shift").get<std::string>()), e.at("n").get<long>()));
    } else if (kind == "unit_at") {
      cs.constraints.push_back(
          LocalConstraint::unit_at(Int(e.at("p").get<std::string>().c_str())));
    } else if (kind == "hilbert_eq") {
      cs.constraints.push_back(LocalConstraint::hilbert_eq(
          place_from_string(e.at("place").get<std::string>()),
          parse_rat(e.at("ref").get<std::string>()), e.at("target").get<int>()));
    } else if (kind == "integral_outside") {
      std::vector<Int> sup;
      for (const auto& p : e.at("support")) sup.push_back(Int(p.get<std::string>().c_str()));
      cs.constraints.push_back(LocalConstraint::integral_outside(std::move(sup)));
    } else {
      throw invalid_input("unknown constraint kind: " + kind);
    }
  }
  for (const auto& p : j.at("denominator_support"))
    cs.denominator_support.push_back(Int(p.get<std::string>().c_str()));
  return cs;
}

ordered_json trace_to_json(const ConstructionTrace& tr) {
  ordered_json j;
  j["recipe"] = recipe_name(tr.recipe);
  auto places = [](const std::vector<QPlace>& S) {
    ordered_json a = ordered_json::array();
    for (const auto& v : S) a.push_back(v.to_string());
    return a;
  };
  j["S"] = places(tr.S);
  j["S_prime"] = places(tr.S_prime);
  j["S_doubleprime"] = places(tr.S_doubleprime);
  j["v1"] = tr.v1 ? ordered_json(tr.v1->get_str()) : ordered_json(nullptr);
  j["v2"] = tr.v2 ? ordered_json(tr.v2->get_str()) : ordered_json(nullptr);
  j["a"] = rat_to_string(tr.a);
  j["b"] = rat_to_string(tr.b);
  j["c"] = rat_to_string(tr.c);
  j["a_constraints"] = constraint_set_to_json(tr.a_constraints);
  j["b_constraints"] = constraint_set_to_json(tr.b_constraints);
  j["c_constraints"] = constraint_set_to_json(tr.c_constraints);
  if (tr.known_point) {
    ordered_json pt = ordered_json::array();
    for (const auto& c : *tr.known_point) pt.push_back(rat_to_string(c));
    j["known_point"] = pt;
  } else {
    j["known_point"] = nullptr;
  }
  return j;
}

}  // namespace chatelet
