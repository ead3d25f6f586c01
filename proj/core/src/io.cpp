#include "qent/io.hpp"

#include <charconv>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qent/errors.hpp"

#ifndef QENT_VERSION
#define QENT_VERSION "0.0.0"
#endif

namespace qent::io {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw FormatError(where + ": unknown field \"" + key + "\"");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::vector<std::size_t> unsigned_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_unsigned())
      throw FormatError(where + "[" + std::to_string(k) + "]: expected a nonnegative integer");
    out.push_back(j[k].get<std::size_t>());
  }
  return out;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  return j.get<double>();
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

// 1-based label arrays.
json labels_json(const ParticleSet& set) {
  json out = json::array();
  for (std::size_t l : set.labels()) out.push_back(l + 1);
  return out;
}

ParticleSet set_from_json(const json& j, const ParticleSet& whole, const std::string& where) {
  auto labels = unsigned_array(j, where);
  for (auto& l : labels) {
    if (l == 0 || l > whole.size()) throw FormatError(where + ": particle label out of range");
    --l;
  }
  try {
    return whole.subset(labels);
  } catch (const Error& e) {
    throw FormatError(where + ": " + e.what());
  }
}

std::string join_labels(const ParticleSet& s) { return s.to_string(); }

std::string format_complex(Complex z) {
  std::ostringstream out;
  out << std::setprecision(6);
  const double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
  if (im == 0.0) {
    out << re;
  } else if (re == 0.0) {
    out << im << "i";
  } else {
    out << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
  }
  return out.str();
}

std::vector<std::string> basis_labels(const ParticleSet& set) {
  std::vector<std::string> out;
  const auto& dims = set.dims();
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t flat = 0; flat < set.total_dim(); ++flat) {
    std::string s;
    for (std::size_t k = 0; k < digit.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(digit[k]);
    }
    out.push_back(std::move(s));
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return out;
}

std::vector<std::size_t> parse_integers(std::string_view text, char sep, std::string_view what) {
  std::vector<std::size_t> out;
  if (text.empty()) throw FormatError(std::string(what) + " is empty");
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(sep, start), text.size());
    auto token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw FormatError(std::string(what) + ": cannot read \"" + std::string(token) +
                        "\" as a nonnegative integer");
    out.push_back(value);
    start = end + 1;
  }
  std::set<std::size_t> unique(out.begin(), out.end());
  if (unique.size() != out.size())
    throw FormatError(std::string(what) + ": repeated entry in \"" + std::string(text) + "\"");
  return out;
}

}  // namespace

std::string_view version() { return QENT_VERSION; }

// ---------------------------------------------------------------------------
// State files

PureState parse_state(std::string_view text) {
  const json doc = parse_json(text, "state file");
  if (!doc.is_object()) throw FormatError("state file: top level must be an object");
  reject_unknown_keys(doc, {"dims", "amps", "normalize"}, "state file");

  const auto dims = unsigned_array(require(doc, "dims", "state file"), "dims");
  if (dims.empty()) throw FormatError("dims: must list at least one particle");
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (dims[k] < 2)
      throw DimensionError("dims[" + std::to_string(k) + "]: particle " + std::to_string(k + 1) +
                           " has dimension " + std::to_string(dims[k]) + ", need >= 2");

  bool normalize = false;
  if (auto it = doc.find("normalize"); it != doc.end()) {
    if (!it->is_boolean()) throw FormatError("normalize: expected true or false");
    normalize = it->get<bool>();
  }

  const json& amps = require(doc, "amps", "state file");
  if (!amps.is_array()) throw FormatError("amps: expected an array of objects");
  std::vector<AmplitudeEntry> entries;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::string where = "amps[" + std::to_string(i) + "]";
    const json& a = amps[i];
    if (!a.is_object()) throw FormatError(where + ": expected an object");
    reject_unknown_keys(a, {"idx", "re", "im"}, where);
    auto idx = unsigned_array(require(a, "idx", where), where + ".idx");
    if (idx.size() != dims.size())
      throw DimensionError(where + ".idx: has " + std::to_string(idx.size()) +
                           " coordinates but dims lists " + std::to_string(dims.size()) +
                           " particles");
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] >= dims[k])
        throw DimensionError(where + ".idx[" + std::to_string(k) + "] = " +
                             std::to_string(idx[k]) + " is out of range for dimension " +
                             std::to_string(dims[k]));
    if (!seen.insert(idx).second)
      throw DuplicateIndexError(where + ".idx: multi-index listed more than once");
    const double re = number(require(a, "re", where), where + ".re");
    const double im = number(require(a, "im", where), where + ".im");
    entries.push_back({std::move(idx), Complex{re, im}});
  }
  return build_pure_state(dims, entries, normalize);
}

std::string write_state(const PureState& state) {
  json doc;
  doc["dims"] = state.dims();
  json amps = json::array();
  for (const auto& e : state.entries())
    amps.push_back({{"idx", e.index}, {"re", e.value.real()}, {"im", e.value.imag()}});
  doc["amps"] = std::move(amps);
  return doc.dump(2) + "\n";
}

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

// ---------------------------------------------------------------------------
// Reports

ReportDocument make_document(EntanglementReport report, const PureState& state,
                             std::string_view input_bytes) {
  return {std::move(report), state.dims(), input_digest(input_bytes), std::string(version())};
}

std::string report_to_json(const ReportDocument& doc) {
  const auto& r = doc.report;
  json out;
  out["tool"] = {{"name", "qent"}, {"version", doc.tool_version}};
  out["input"] = {{"digest", doc.input_digest}, {"dims", doc.dims}};
  out["tolerances"] = {{"schmidt", r.tolerances.schmidt_tol},
                       {"rank", r.tolerances.rank_tol},
                       {"product", r.tolerances.product_tol}};
  out["classification"] = {{"label", to_string(r.label.kind)}, {"blocks", r.label.blocks}};

  json blocks = json::array();
  for (const auto& b : r.finest.blocks) blocks.push_back(labels_json(b));
  out["finest_partition"] = std::move(blocks);

  json edges = json::array();
  for (auto [i, j] : r.pairwise.edges()) edges.push_back({i + 1, j + 1});
  out["pairwise"] = {{"edges", std::move(edges)}, {"complete", r.pairwise.is_complete()}};

  json flags = json::array();
  for (const auto& p : r.partiality)
    flags.push_back({{"subsystem", labels_json(p.subsystem)},
                     {"flag", to_string(p.flag.kind)},
                     {"rank", p.flag.rank},
                     {"dim", p.flag.full_dim}});
  out["partiality"] = std::move(flags);

  json utter = {{"utter", r.utter.utter}, {"witness", nullptr}};
  if (r.utter.witness) {
    const auto& w = *r.utter.witness;
    utter["witness"] = {{"subsystem", labels_json(w.subsystem)},
                        {"left", labels_json(w.cut.left())},
                        {"right", labels_json(w.cut.right())}};
  }
  out["utter"] = std::move(utter);
  return out.dump(2) + "\n";
}

ReportDocument report_from_json(std::string_view text) {
  const json in = parse_json(text, "report");
  try {
    ReportDocument doc;
    doc.tool_version = in.at("tool").at("version").get<std::string>();
    doc.input_digest = in.at("input").at("digest").get<std::string>();
    doc.dims = unsigned_array(in.at("input").at("dims"), "input.dims");
    const ParticleSet whole = ParticleSet::whole(doc.dims);

    auto& r = doc.report;
    r.num_particles = doc.dims.size();
    const auto& tol = in.at("tolerances");
    r.tolerances = {number(tol.at("schmidt"), "tolerances.schmidt"),
                    number(tol.at("rank"), "tolerances.rank"),
                    number(tol.at("product"), "tolerances.product")};

    const auto& cls = in.at("classification");
    const auto kind = class_kind_from_string(cls.at("label").get<std::string>());
    if (!kind) throw FormatError("classification.label: unknown label");
    r.label = {*kind, cls.at("blocks").get<std::size_t>()};

    for (const auto& b : in.at("finest_partition"))
      r.finest.blocks.push_back(set_from_json(b, whole, "finest_partition"));

    r.pairwise = EntanglementGraph(whole.size());
    for (const auto& e : in.at("pairwise").at("edges")) {
      const auto ij = unsigned_array(e, "pairwise.edges");
      if (ij.size() != 2 || ij[0] == 0 || ij[1] == 0 || ij[0] > whole.size() ||
          ij[1] > whole.size())
        throw FormatError("pairwise.edges: malformed edge");
      r.pairwise.set_edge(ij[0] - 1, ij[1] - 1, true);
    }

    for (const auto& p : in.at("partiality")) {
      const auto flag_kind = partiality_kind_from_string(p.at("flag").get<std::string>());
      if (!flag_kind) throw FormatError("partiality.flag: unknown flag");
      r.partiality.push_back({set_from_json(p.at("subsystem"), whole, "partiality.subsystem"),
                              {*flag_kind, p.at("rank").get<std::size_t>(),
                               p.at("dim").get<std::size_t>()}});
    }

    const auto& u = in.at("utter");
    r.utter.utter = u.at("utter").get<bool>();
    r.utter.label = r.label;
    if (const auto& w = u.at("witness"); !w.is_null()) {
      auto sub = set_from_json(w.at("subsystem"), whole, "utter.witness.subsystem");
      auto left = set_from_json(w.at("left"), whole, "utter.witness.left");
      auto right = set_from_json(w.at("right"), whole, "utter.witness.right");
      r.utter.witness = UtterWitness{std::move(sub), Bipartition(std::move(left), std::move(right))};
    }
    return doc;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

std::string report_to_text(const ReportDocument& doc) {
  const auto& r = doc.report;
  std::ostringstream out;
  out << "classification:    " << r.label.to_string() << "  (k=" << r.label.blocks
      << " of N=" << r.num_particles << ")\n";
  out << "finest partition:  " << r.finest.to_string() << "\n";

  out << "entangled pairs:   ";
  const auto edges = r.pairwise.edges();
  if (edges.empty()) out << "none";
  for (std::size_t k = 0; k < edges.size(); ++k)
    out << (k ? ", " : "") << edges[k].first + 1 << "-" << edges[k].second + 1;
  out << "\n";

  if (!r.partiality.empty()) {
    out << "partiality:\n";
    out << "  " << std::left << std::setw(14) << "subsystem" << std::setw(14) << "flag"
        << "rank/dim\n";
    for (const auto& p : r.partiality)
      out << "  " << std::setw(14) << join_labels(p.subsystem) << std::setw(14)
          << to_string(p.flag.kind) << p.flag.rank << "/" << p.flag.full_dim << "\n";
  }

  out << "utterly entangled: ";
  if (r.utter.utter) {
    out << "yes";
  } else if (r.utter.witness) {
    out << "no (subsystem " << r.utter.witness->subsystem.to_string()
        << " factorizes across " << r.utter.witness->cut.to_string() << ")";
  } else {
    out << "no (not completely entangled)";
  }
  out << "\n";

  out << "tolerances:        schmidt=" << r.tolerances.schmidt_tol
      << " rank=" << r.tolerances.rank_tol << " product=" << r.tolerances.product_tol << "\n";
  out << "input:             " << doc.input_digest << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Density dumps

std::string density_to_text(const DensityOperator& rho) {
  const auto labels = basis_labels(rho.particles());
  std::vector<std::vector<std::string>> cells(labels.size());
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.size() + 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      cells[i].push_back(format_complex(
          rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
      width = std::max(width, cells[i].back().size());
    }
  }

  std::ostringstream out;
  out << "reduced density operator on " << rho.particles().to_string() << "\n";
  out << std::setw(static_cast<int>(width) + 2) << "";
  for (const auto& l : labels) out << std::right << std::setw(static_cast<int>(width) + 1) << "|" + l + ">";
  out << "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << "<" + labels[i] + "|";
    for (const auto& c : cells[i]) out << std::right << std::setw(static_cast<int>(width) + 1) << c;
    out << "\n";
  }
  return out.str();
}

std::string density_to_json(const DensityOperator& rho) {
  json out;
  out["particles"] = labels_json(rho.particles());
  out["dims"] = rho.particles().dims();
  out["basis"] = basis_labels(rho.particles());
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < rho.matrix().rows(); ++i) {
    json row_re = json::array(), row_im = json::array();
    for (Eigen::Index j = 0; j < rho.matrix().cols(); ++j) {
      row_re.push_back(rho.matrix()(i, j).real());
      row_im.push_back(rho.matrix()(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Argument lists

std::vector<std::size_t> parse_label_list(std::string_view text) {
  auto labels = parse_integers(text, ',', "particle list");
  for (auto& l : labels) {
    if (l == 0) throw FormatError("particle list: labels start at 1");
    --l;
  }
  return labels;
}

std::vector<std::size_t> parse_basis_sum(std::string_view text) {
  return parse_integers(text, '+', "projector spec");
}

}  // namespace qent::io
