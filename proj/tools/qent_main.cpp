// qent: entanglement structure of pure states of distinguishable particles.
//
//   qent fixtures star > star.json
//   qent analyze star.json --format json
//   qent reduce star.json --keep 1,3
//   qent measure star.json --particle 1 --project 0+2 --out post.json
//
// Exit codes: 0 success, 2 bad input (file, flags, projector spec), 1 internal.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qent/analysis.hpp"
#include "qent/corpus.hpp"
#include "qent/errors.hpp"
#include "qent/io.hpp"
#include "qent/linalg.hpp"
#include "qent/measurement.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInternal = 1;

struct Input {
  std::string bytes;
  qent::PureState state;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qent::FormatError("cannot open state file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Input load(const std::string& path) {
  std::string bytes = read_all(path);
  auto state = qent::io::parse_state(bytes);
  return {std::move(bytes), std::move(state)};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qent::FormatError("cannot write '" + path + "'");
  out << text;
}

struct ToleranceFlags {
  std::optional<double> all, schmidt, rank, product;

  qent::AnalysisTolerances resolve() const {
    auto t = qent::AnalysisTolerances::uniform(all.value_or(qent::kDefaultTol));
    if (schmidt) t.schmidt_tol = *schmidt;
    if (rank) t.rank_tol = *rank;
    if (product) t.product_tol = *product;
    return t;
  }
};

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement structure of N distinguishable particles in a pure state"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qent::io::version()));

  // analyze
  std::string analyze_file = "-", analyze_format = "text";
  ToleranceFlags tol;
  auto* analyze = app.add_subcommand("analyze", "Classify a state and print its full report");
  analyze->add_option("file", analyze_file, "State file ('-' for stdin)")->capture_default_str();
  analyze->add_option("--tol", tol.all, "Tolerance for all three tests")->check(CLI::PositiveNumber);
  analyze->add_option("--schmidt-tol", tol.schmidt, "Relative singular-value cutoff")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--rank-tol", tol.rank, "Relative eigenvalue cutoff")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--product-tol", tol.product, "Max-abs gap for product densities")
      ->check(CLI::PositiveNumber);
  add_format(analyze, analyze_format);

  // reduce
  std::string reduce_file = "-", reduce_format = "text", keep_list;
  auto* reduce = app.add_subcommand("reduce", "Print a reduced density operator");
  reduce->add_option("file", reduce_file, "State file ('-' for stdin)")->capture_default_str();
  reduce->add_option("--keep", keep_list, "Particles to keep, 1-based, e.g. 1,3")->required();
  add_format(reduce, reduce_format);

  // measure
  std::string measure_file = "-", measure_format = "text", projector_spec, post_path;
  std::size_t particle = 0;
  auto* measure = app.add_subcommand("measure", "Apply a projective measurement to one particle");
  measure->add_option("file", measure_file, "State file ('-' for stdin)")->capture_default_str();
  measure->add_option("--particle", particle, "Measured particle (1-based)")->required();
  measure->add_option("--project", projector_spec,
                      "Basis vectors spanning the projector, 0-based, e.g. 0+2")
      ->required();
  measure->add_option("--out", post_path, "Write the post-measurement state here");
  add_format(measure, measure_format);

  // fixtures
  std::string fixture_name, fixture_out;
  auto* fixtures = app.add_subcommand("fixtures", "Write a built-in state as a state file");
  fixtures->add_option("name", fixture_name, "star | double-star | ghz-positions")->required();
  fixtures->add_option("--out", fixture_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) {
      const auto input = load(analyze_file);
      auto report = qent::full_report(input.state, tol.resolve());
      const auto doc = qent::io::make_document(std::move(report), input.state, input.bytes);
      std::cout << (analyze_format == "json" ? qent::io::report_to_json(doc)
                                             : qent::io::report_to_text(doc));
    } else if (*reduce) {
      const auto input = load(reduce_file);
      const auto labels = qent::io::parse_label_list(keep_list);
      const auto& whole = input.state.particles();
      for (auto l : labels)
        if (!whole.contains(l))
          throw qent::SubsetError("--keep: particle " + std::to_string(l + 1) +
                                  " not in a " + std::to_string(whole.size()) +
                                  "-particle state");
      const auto rho = qent::reduce(input.state, whole.subset(labels));
      std::cout << (reduce_format == "json" ? qent::io::density_to_json(rho)
                                            : qent::io::density_to_text(rho));
    } else if (*measure) {
      const auto input = load(measure_file);
      const auto& whole = input.state.particles();
      if (particle == 0 || particle > whole.size())
        throw qent::ParticleError("--particle: " + std::to_string(particle) +
                                  " is not a particle of a " + std::to_string(whole.size()) +
                                  "-particle state");
      const std::size_t label = particle - 1;
      const auto basis = qent::io::parse_basis_sum(projector_spec);
      const auto p = qent::Projector::onto_basis(label, whole.dim_of(label), basis);
      const auto outcome = qent::project(input.state, p);
      if (outcome.post && !post_path.empty()) emit(qent::io::write_state(*outcome.post), post_path);

      std::ostringstream out;
      out.precision(17);
      if (measure_format == "json") {
        out << "{\n  \"probability\": " << outcome.probability << ",\n  \"possible\": "
            << (outcome.post ? "true" : "false") << "\n}\n";
      } else {
        out << "probability: " << outcome.probability << "\n";
        if (!outcome.post) out << "branch impossible; no post-measurement state\n";
        else if (!post_path.empty()) out << "post-measurement state written to " << post_path << "\n";
      }
      std::cout << out.str();
    } else if (*fixtures) {
      const auto state = qent::fixture(fixture_name);
      if (!state) {
        std::string known;
        for (auto n : qent::fixture_names()) known += (known.empty() ? "" : ", ") + std::string(n);
        throw qent::FormatError("unknown fixture '" + fixture_name + "' (known: " + known + ")");
      }
      emit(qent::io::write_state(*state), fixture_out);
    }
  } catch (const qent::Error& e) {
    std::cerr << "qent: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "qent: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
