// petal: command-line front end for petal sequences and their knots.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "petal/petal.hpp"

using nlohmann::json;
using namespace petal;

namespace {

struct Globals {
  bool as_json = false;
  std::string data = default_table_path();
};

json levels_json(const PetalSequence& s) { return std::vector<int>(s.levels().begin(), s.levels().end()); }

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.as_json)
    std::cout << j.dump() << '\n';
  else
    std::cout << text << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingData, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

// Sequences from the positional argument, or one per non-blank line of a file.
std::vector<PetalSequence> sequences_from(const std::string& arg, const std::string& file) {
  std::vector<PetalSequence> out;
  if (!file.empty()) {
    std::istringstream lines(file == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(file));
    std::string line;
    while (std::getline(lines, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(parse_sequence(line));
    return out;
  }
  if (arg.empty()) throw CLI::ValidationError("SEQUENCE", "a sequence or --file is required");
  out.push_back(parse_sequence(arg));
  return out;
}

PlanarDiagram diagram_for(const PetalSequence& s, const std::string& path) {
  return path == "geometric" ? petal_to_pd_geometric(s) : sequence_to_pd(s);
}

std::string pd_text(const PlanarDiagram& d) {
  if (d.empty()) return "(no crossings)";
  std::string out;
  for (const auto& x : d.crossings()) {
    if (!out.empty()) out += '\n';
    out += "X[" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + "," +
           std::to_string(x[3]) + "]";
  }
  return out;
}

std::string ids_text(const std::vector<Identification>& ids) {
  if (ids.empty()) return "not in table";
  std::string out;
  for (const auto& id : ids) out += (out.empty() ? "" : "\n") + id.name;
  return out;
}

SearchOptions search_options(unsigned jobs, bool quiet) {
  SearchOptions o;
  o.jobs = jobs;
  if (!quiet)
    o.progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 16 == 0) std::cerr << "\r  " << done << "/" << total << " chunks" << std::flush;
      if (done == total) std::cerr << '\n';
    };
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petal sequences: conversion, invariants, identification and search"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.as_json, "Machine-readable JSON output");
  app.add_option("--data", g.data, "Knot table JSON")->capture_default_str();

  std::string seq_arg, file_arg, path = "grid", out_path, pd_file, grid_file, knot, direction;
  std::string second_arg;
  int r_value = 0, petals_value = 0, max_p = 11, exhaustive_max = 9, position = 0;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool quiet = false, include_reducible = false, as_grid = false;
  double max_seconds = 0;

  auto add_seq = [&](CLI::App* sub, bool batch) {
    sub->add_option("sequence", seq_arg, "Petal sequence, e.g. \"1 3 5 2 4\"");
    if (batch) sub->add_option("--file", file_arg, "Read one sequence per line ('-' = stdin)");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check that a sequence is an odd permutation");
  add_seq(validate_cmd, true);
  auto* canon_cmd = app.add_subcommand("canon", "Canonical form under rotation and reversal");
  add_seq(canon_cmd, true);
  auto* reduce_cmd = app.add_subcommand("reduce", "Remove adjacent-level loops until none remain");
  add_seq(reduce_cmd, true);
  auto* stabilize_cmd = app.add_subcommand("stabilize", "Insert a removable pair of levels");
  add_seq(stabilize_cmd, false);
  stabilize_cmd->add_option("--at", position, "Insertion position 0..p")->capture_default_str();
  auto* compose_cmd = app.add_subcommand("compose", "Sequence for the connected sum");
  compose_cmd->add_option("first", seq_arg)->required();
  compose_cmd->add_option("second", second_arg)->required();
  auto* mirror_cmd = app.add_subcommand("mirror", "Complement every level");
  add_seq(mirror_cmd, true);
  auto* torus_cmd = app.add_subcommand("torus", "Sequence for the torus knot T(r, r+1)");
  torus_cmd->add_option("r", r_value)->required()->check(CLI::Range(2, 1000));
  auto* random_cmd = app.add_subcommand("random", "Pseudorandom sequence");
  random_cmd->add_option("--petals", petals_value)->required();
  random_cmd->add_option("--seed", seed)->capture_default_str();
  auto* grid_cmd = app.add_subcommand("to-grid", "Grid diagram of a sequence");
  add_seq(grid_cmd, false);
  auto* pd_cmd = app.add_subcommand("to-pd", "Planar diagram of a sequence");
  add_seq(pd_cmd, false);
  pd_cmd->add_option("--path", path, "Conversion route")->check(CLI::IsMember({"grid", "geometric"}))->capture_default_str();
  auto* render_cmd = app.add_subcommand("render", "Write an SVG drawing");
  add_seq(render_cmd, false);
  render_cmd->add_flag("--as-grid", as_grid, "Draw the sequence's grid diagram instead of the rose");
  render_cmd->add_option("--grid-file", grid_file, "Draw a grid diagram read from JSON");
  render_cmd->add_option("-o,--output", out_path, "SVG file to write")->required();
  auto* inv_cmd = app.add_subcommand("invariants", "Jones, Alexander and determinant");
  add_seq(inv_cmd, true);
  inv_cmd->add_option("--pd", pd_file, "Planar diagram JSON instead of a sequence");
  inv_cmd->add_option("--path", path)->check(CLI::IsMember({"grid", "geometric"}))->capture_default_str();
  auto* id_cmd = app.add_subcommand("identify", "Name the knot of a sequence");
  add_seq(id_cmd, true);
  id_cmd->add_option("--pd", pd_file, "Planar diagram JSON instead of a sequence");
  auto* pn_cmd = app.add_subcommand("petal-number", "Smallest petal count representing a table knot");
  pn_cmd->add_option("knot", knot)->required();
  pn_cmd->add_option("--max", max_p)->capture_default_str();
  pn_cmd->add_option("--jobs", jobs)->capture_default_str();
  auto* classify_cmd = app.add_subcommand("classify", "Identify every sequence with a given petal count");
  classify_cmd->add_option("--petals", petals_value)->required();
  classify_cmd->add_flag("--include-reducible", include_reducible, "Also fingerprint reducible sequences");
  classify_cmd->add_option("--jobs", jobs)->capture_default_str();
  classify_cmd->add_option("--max-seconds", max_seconds, "Wall-clock budget (0 = none)");
  classify_cmd->add_flag("--quiet", quiet, "No progress on stderr");
  auto* verify_cmd = app.add_subcommand("verify-table", "Check the shipped table's sequences and minimality");
  verify_cmd->add_option("--max", max_p, "Rows with at most this many petals")->capture_default_str();
  verify_cmd->add_option("--exhaustive-max", exhaustive_max, "Largest petal count searched exhaustively")
      ->capture_default_str();
  verify_cmd->add_option("--jobs", jobs)->capture_default_str();
  verify_cmd->add_flag("--quiet", quiet, "No progress on stderr");
  auto* sticks_cmd = app.add_subcommand("sticks", "Polygonal realization with at most 2(p-1) sticks");
  add_seq(sticks_cmd, false);
  sticks_cmd->add_option("--direction", direction, "Projection direction x,y,z (rationals) for the check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate_cmd->parsed()) {
      for (const auto& s : sequences_from(seq_arg, file_arg))
        emit(g, {{"sequence", levels_json(s)}, {"petals", s.petals()}, {"valid", true}},
             s.to_string() + "\nvalid, p=" + std::to_string(s.petals()));
    } else if (canon_cmd->parsed()) {
      for (const auto& s : sequences_from(seq_arg, file_arg)) {
        const auto c = canonicalize(s);
        emit(g, {{"sequence", levels_json(c)}}, c.to_string());
      }
    } else if (reduce_cmd->parsed()) {
      for (const auto& s : sequences_from(seq_arg, file_arg)) {
        int steps = 0;
        PetalSequence cur = s;
        while (is_reducible(cur)) {
          cur = reduce_step(cur);
          ++steps;
        }
        emit(g, {{"sequence", levels_json(cur)}, {"steps", steps}, {"irreducible", steps == 0}},
             cur.to_string() + (steps == 0 ? "\nirreducible" : "\nreduced in " + std::to_string(steps) + " step(s)"));
      }
    } else if (stabilize_cmd->parsed()) {
      const auto s = stabilize(sequences_from(seq_arg, "").front(), position);
      emit(g, {{"sequence", levels_json(s)}}, s.to_string());
    } else if (compose_cmd->parsed()) {
      const auto s = compose(parse_sequence(seq_arg), parse_sequence(second_arg));
      emit(g, {{"sequence", levels_json(s)}}, s.to_string());
    } else if (mirror_cmd->parsed()) {
      for (const auto& s : sequences_from(seq_arg, file_arg)) {
        const auto m = mirror(s);
        emit(g, {{"sequence", levels_json(m)}}, m.to_string());
      }
    } else if (torus_cmd->parsed()) {
      const auto s = torus_sequence(r_value);
      emit(g, {{"sequence", levels_json(s)}, {"r", r_value}}, s.to_string());
    } else if (random_cmd->parsed()) {
      const auto s = random_sequence(petals_value, seed);
      emit(g, {{"sequence", levels_json(s)}, {"seed", seed}}, s.to_string());
    } else if (grid_cmd->parsed()) {
      const auto grid = petal_to_grid(sequences_from(seq_arg, "").front());
      std::ostringstream t;
      t << "size " << grid.size() << "\no:";
      for (int r : grid.o_rows()) t << ' ' << r;
      t << "\nx:";
      for (int r : grid.x_rows()) t << ' ' << r;
      emit(g, grid_to_json(grid), t.str());
    } else if (pd_cmd->parsed()) {
      const auto d = diagram_for(sequences_from(seq_arg, "").front(), path);
      emit(g, diagram_to_json(d), pd_text(d));
    } else if (render_cmd->parsed()) {
      std::string svg;
      if (!grid_file.empty())
        svg = render_svg(grid_from_json(read_json(grid_file)));
      else if (as_grid)
        svg = render_svg(petal_to_grid(sequences_from(seq_arg, "").front()));
      else
        svg = render_svg(sequences_from(seq_arg, "").front());
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error(ErrorKind::MissingData, "cannot write " + out_path);
      out << svg;
      emit(g, {{"written", out_path}, {"bytes", svg.size()}}, "wrote " + out_path);
    } else if (inv_cmd->parsed()) {
      std::vector<PlanarDiagram> diagrams;
      if (!pd_file.empty())
        diagrams.push_back(diagram_from_json(read_json(pd_file)));
      else
        for (const auto& s : sequences_from(seq_arg, file_arg)) diagrams.push_back(diagram_for(s, path));
      for (const auto& d : diagrams) {
        const Fingerprint f = fingerprint(d);
        json j = fingerprint_to_json(f);
        j["crossings"] = d.size();
        j["writhe"] = d.writhe();
        emit(g, j,
             "crossings   " + std::to_string(d.size()) + "\njones       " + f.jones.to_string() + "\nalexander   " +
                 f.alexander.to_string() + "\ndeterminant " + f.determinant.str());
      }
    } else if (id_cmd->parsed()) {
      const auto db = KnotDatabase::load(g.data);
      std::vector<Fingerprint> fps;
      if (!pd_file.empty())
        fps.push_back(fingerprint(diagram_from_json(read_json(pd_file))));
      else
        for (const auto& s : sequences_from(seq_arg, file_arg)) fps.push_back(sequence_fingerprint(s));
      for (const auto& f : fps) {
        const auto ids = db.identify(f);
        emit(g, identifications_to_json(ids), ids_text(ids));
      }
    } else if (pn_cmd->parsed()) {
      const auto db = KnotDatabase::load(g.data);
      const KnotRecord* rec = db.find(knot);
      if (!rec) throw Error(ErrorKind::NotFound, "knot " + knot + " is not in the table");
      SearchOptions o;
      o.jobs = jobs;
      const auto res = petal_number(*rec, max_p, o);
      json w = json::array();
      std::string text = std::to_string(res.petals);
      for (const auto& s : res.witnesses) {
        w.push_back(levels_json(s));
        text += "\n" + s.to_string();
      }
      emit(g, {{"knot", knot}, {"petal_number", res.petals}, {"witnesses", w}}, text);
    } else if (classify_cmd->parsed()) {
      const auto db = KnotDatabase::load(g.data);
      SearchOptions o = search_options(jobs, quiet || g.as_json);
      o.skip_reducible = !include_reducible;
      o.max_seconds = max_seconds;
      const auto rep = classify_all(petals_value, db, o);
      std::ostringstream t;
      t << "p=" << rep.petals << " examined " << rep.examined << " (skipped " << rep.skipped << " reducible)\n";
      for (const auto& [name, c] : rep.counts) t << name << '\t' << c << '\n';
      t << "unidentified\t" << rep.unidentified.size();
      emit(g, report_to_json(rep), t.str());
    } else if (verify_cmd->parsed()) {
      const auto db = KnotDatabase::load(g.data);
      const auto rep = verify_table(db, max_p, exhaustive_max, search_options(jobs, quiet || g.as_json));
      std::ostringstream t;
      for (const auto& r : rep.rows) {
        t << (r.pass() ? "PASS " : "FAIL ") << r.name << " p=" << r.table_petals
          << (r.sequence_identifies ? " identifies" : " DOES-NOT-IDENTIFY");
        if (r.minimality_checked) t << (r.absent_below ? ", minimal" : ", NOT-MINIMAL");
        else t << ", minimality not searched";
        t << '\n';
      }
      t << (rep.all_pass() ? "all rows pass" : "some rows FAIL");
      emit(g, table_report_to_json(rep), t.str());
      if (!rep.all_pass()) return 1;
    } else if (sticks_cmd->parsed()) {
      const auto s = sequences_from(seq_arg, "").front();
      const auto c = petal_to_sticks(s);
      const std::string defect = embedding_defect(c);
      PlanarDiagram d;
      if (!direction.empty()) {
        std::vector<Rational> xs;
        std::stringstream ds(direction);
        std::string tok;
        while (std::getline(ds, tok, ',')) xs.push_back(parse_rational(tok));
        if (xs.size() != 3) throw CLI::ValidationError("--direction", "needs three comma-separated rationals");
        d = project_to_pd(c, {xs[0], xs[1], xs[2]});
      } else {
        d = project_generic(c);
      }
      const auto db = KnotDatabase::load(g.data);
      const auto ids = db.identify(fingerprint(d));
      json j = {{"vertices", sticks_to_json(c)},
                {"segments", c.segments()},
                {"embedded", defect.empty()},
                {"projection_crossings", d.size()},
                {"identifies_as", identifications_to_json(ids)}};
      std::ostringstream t;
      for (const auto& v : c.vertices)
        t << rational_text(v.x) << ' ' << rational_text(v.y) << ' ' << rational_text(v.z) << '\n';
      t << "segments " << c.segments() << ", embedded " << (defect.empty() ? "yes" : "no: " + defect)
        << ", projection identifies as " << (ids.empty() ? "nothing in table" : ids.front().name);
      emit(g, j, t.str());
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
