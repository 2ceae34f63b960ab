#include "emb3/cli.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "emb3/catalog.hpp"
#include "emb3/complex.hpp"
#include "emb3/decide.hpp"
#include "emb3/graph.hpp"
#include "emb3/homology.hpp"
#include "emb3/jsonio.hpp"
#include "emb3/minors.hpp"
#include "emb3/planarity.hpp"
#include "emb3/rotation.hpp"
#include "emb3/stretch.hpp"

namespace emb3 {
namespace {

using nlohmann::json;

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUsage = 64;

Complex2 resolve_input(const std::string& spec) {
  if (spec.rfind("gen:", 0) == 0) return gen(spec.substr(4));
  Diagnostics diag;
  auto c = complex_from_file(spec, diag);
  if (!c) {
    std::string msg = "invalid complex '" + spec + "'";
    for (const auto& e : diag.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  return *c;
}

json report_envelope(const std::string& spec, const Complex2& c) {
  json r;
  r["tool"] = "emb3";
  r["version"] = kToolVersion;
  r["input"] = {{"spec", spec}, {"hash", complex_hash(c)}};
  return r;
}

void write_report(const json& r, std::ostream& out, const std::string& path) {
  if (path.empty()) {
    out << r.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  f << r.dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write report to '" + path + "'");
}

const char* obstruction_kind_name(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::ConeOverKuratowski: return "ConeOverKuratowski";
    case ObstructionKind::CombinedCone: return "CombinedCone";
    case ObstructionKind::Moebius: return "Moebius";
    case ObstructionKind::TorusCrossing: return "TorusCrossing";
    case ObstructionKind::Helicopter: return "Helicopter";
    case ObstructionKind::NonPlanarLinkRaw: return "NonPlanarLink";
  }
  return "?";
}

const char* class_tag_name(GraphClass::Tag t) {
  switch (t) {
    case GraphClass::Tag::Subdiv3Connected: return "subdivision-of-3-connected";
    case GraphClass::Tag::ParallelGraph: return "parallel";
    case GraphClass::Tag::FreeGraph: return "free";
    case GraphClass::Tag::StarOfParallel: return "star-of-parallel";
    case GraphClass::Tag::ParaStar: return "para-star";
    case GraphClass::Tag::Other: return "other";
  }
  return "?";
}

json sigma_to_json(const Complex2& c, const RotationSystem& s) {
  json j = json::object();
  for (size_t e = 0; e < s.sigma.size(); ++e) {
    json rot = json::array();
    for (const auto& entry : s.sigma[e]) {
      rot.push_back({{"face", c.faces[entry.face].id},
                     {"pos", entry.pos},
                     {"forward", entry.forward}});
    }
    j[c.edges[e].id] = std::move(rot);
  }
  return j;
}

const char* stretch_kind_name(StretchOp::Kind k) {
  switch (k) {
    case StretchOp::Kind::StretchBranch: return "StretchBranch";
    case StretchOp::Kind::Stretch2Sep: return "Stretch2Sep";
    case StretchOp::Kind::StretchEdge: return "StretchEdge";
    case StretchOp::Kind::ContractReversible: return "ContractReversible";
    case StretchOp::Kind::SplitVertex: return "SplitVertex";
  }
  return "?";
}

json stretch_script_to_json(const std::vector<StretchOp>& script) {
  json a = json::array();
  for (const auto& op : script) {
    json o;
    o["kind"] = stretch_kind_name(op.kind);
    if (!op.vertex.empty()) o["vertex"] = op.vertex;
    if (!op.cutEdge.empty()) o["cutEdge"] = op.cutEdge;
    if (!op.branchEdge.empty()) o["branchEdge"] = op.branchEdge;
    if (!op.edge.empty()) o["edge"] = op.edge;
    if (!op.face1.empty()) o["face1"] = op.face1;
    if (!op.face2.empty()) o["face2"] = op.face2;
    a.push_back(std::move(o));
  }
  return a;
}

json obstruction_to_json(const Obstruction& o) {
  json j;
  j["kind"] = obstruction_kind_name(o.kind);
  if (!o.kuratowskiKind.empty()) j["kuratowskiKind"] = o.kuratowskiKind;
  if (o.family != 0) j["family"] = o.family;
  if (!o.moebiusVariant.empty()) j["moebiusVariant"] = o.moebiusVariant;
  if (o.kind == ObstructionKind::TorusCrossing)
    j["windings"] = {o.windings.first, o.windings.second};
  j["witnessCell"] = o.witnessCell;
  j["script"] = script_to_json(o.script);
  j["description"] = o.description;
  return j;
}

const char* interpretation_name(Verdict::Interpretation i) {
  switch (i) {
    case Verdict::Interpretation::EmbedsInS3IfSimplyConnected:
      return "embeds-in-S3-if-simply-connected";
    case Verdict::Interpretation::EmbedsInOrientable3Manifold:
      return "embeds-in-some-orientable-3-manifold";
    case Verdict::Interpretation::NotEmbeddableAnywhereOrientable:
      return "not-embeddable-in-any-orientable-3-manifold";
    case Verdict::Interpretation::Unknown: return "unknown";
  }
  return "?";
}

json verdict_to_json(const Complex2& c, const Verdict& v) {
  json j;
  switch (v.status) {
    case Verdict::Status::Found: j["status"] = "Found"; break;
    case Verdict::Status::None: j["status"] = "None"; break;
    case Verdict::Status::Inapplicable: j["status"] = "Inapplicable"; break;
  }
  j["p"] = v.p;
  j["assumedSimplyConnected"] = v.assumedSimplyConnected;
  j["h1Trivial"] = v.h1Trivial;
  j["interpretation"] = interpretation_name(v.interpretation);
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (v.sigma) j["sigma"] = sigma_to_json(c, *v.sigma);
  if (v.obstruction) j["obstruction"] = obstruction_to_json(*v.obstruction);
  return j;
}

// The certificate file pairs the obstruction script with the stretching
// script needed to reach the complex it replays on (empty when it replays on
// the input itself).
json certificate_json(const Complex2& c, const Obstruction& o) {
  json cert;
  cert["kind"] = obstruction_kind_name(o.kind);
  cert["stretching"] = json::array();
  bool replaysOnInput = true;
  try {
    apply_script(c, o.script);
  } catch (const std::exception&) {
    replaysOnInput = false;
  }
  if (!replaysOnInput) cert["stretching"] = stretch_script_to_json(normalize(c).script);
  cert["obstruction"] = script_to_json(o.script);
  return cert;
}

int exit_for(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Found: return kExitFound;
    case Verdict::Status::None: return kExitNone;
    case Verdict::Status::Inapplicable: return kExitInvalid;
  }
  return kExitInvalid;
}

struct DecideArgs {
  std::string input;
  int p = 2;
  bool assumeSimplyConnected = false;
  bool minimize = false;
  bool general = false;
  std::string certificatePath;
  std::string reportPath;
};

int cmd_decide(const DecideArgs& a, std::ostream& out, bool obstructMode) {
  Complex2 c = resolve_input(a.input);
  DecideOptions opt;
  opt.p = a.p;
  opt.assumeSimplyConnected = a.assumeSimplyConnected;
  opt.minimize = a.minimize;
  Verdict v = a.general ? decide_general(c, opt) : decide(c, opt);
  json r = report_envelope(a.input, c);
  r["verdict"] = verdict_to_json(c, v);
  switch (v.status) {
    case Verdict::Status::Found:
      out << "Found: a planar rotation system exists ("
          << interpretation_name(v.interpretation) << ")\n";
      break;
    case Verdict::Status::None:
      out << "None: no planar rotation system; obstruction "
          << obstruction_kind_name(v.obstruction->kind) << "\n";
      break;
    case Verdict::Status::Inapplicable:
      out << "Inapplicable: " << v.reason << "\n";
      break;
  }
  if (!a.certificatePath.empty() && v.obstruction) {
    std::ofstream f(a.certificatePath);
    f << certificate_json(c, *v.obstruction).dump(2) << "\n";
    if (!f) throw std::runtime_error("cannot write certificate to '" + a.certificatePath + "'");
  }
  write_report(r, out, a.reportPath);
  if (obstructMode) return v.status == Verdict::Status::None ? kExitFound
                         : v.status == Verdict::Status::Found ? kExitNone
                                                              : kExitInvalid;
  return exit_for(v.status);
}

int cmd_validate(const std::string& input, const std::string& reportPath, std::ostream& out) {
  json r;
  Diagnostics diag;
  std::optional<Complex2> c;
  if (input.rfind("gen:", 0) == 0) {
    c = validate_complex(gen(input.substr(4)), diag);
  } else {
    c = complex_from_file(input, diag);
  }
  if (!c) {
    r["tool"] = "emb3";
    r["version"] = kToolVersion;
    r["input"] = {{"spec", input}, {"hash", nullptr}};
    r["valid"] = false;
    r["errors"] = diag.errors;
    out << "invalid\n";
    write_report(r, out, reportPath);
    return kExitInvalid;
  }
  r = report_envelope(input, *c);
  r["valid"] = true;
  r["counts"] = {{"vertices", c->vertices.size()},
                 {"edges", c->edges.size()},
                 {"faces", c->faces.size()}};
  r["reasonable"] = c->reasonable;
  r["simplicial"] = c->simplicial;
  Measure m = measures(*c);
  r["measure"] = {{"S", m.S}, {"degreeParameter", m.degreeParameter}};
  out << "valid\n";
  write_report(r, out, reportPath);
  return kExitFound;
}

int cmd_links(const std::string& input, const std::string& reportPath, std::ostream& out) {
  Complex2 c = resolve_input(input);
  json r = report_envelope(input, c);
  json links = json::array();
  bool allPlanar = true;
  for (size_t v = 0; v < c.vertices.size(); ++v) {
    LinkGraph lg = link_graph(c, static_cast<int>(v));
    GraphClass cls = classify_graph(lg.g);
    bool planar = planar_rotation_of_graph(lg.g).has_value();
    allPlanar = allPlanar && planar;
    links.push_back({{"vertex", c.vertices[v]},
                     {"nodes", lg.g.numNodes()},
                     {"edges", lg.g.numEdges()},
                     {"connected", lg.g.isConnected()},
                     {"class", class_tag_name(cls.tag)},
                     {"planar", planar}});
  }
  r["links"] = std::move(links);
  out << (allPlanar ? "all links planar\n" : "some link is non-planar\n");
  write_report(r, out, reportPath);
  return kExitFound;
}

int cmd_homology(const std::string& input, int p, const std::string& reportPath,
                 std::ostream& out) {
  Complex2 c = resolve_input(input);
  int rank = h1_rank(c, p);
  json r = report_envelope(input, c);
  r["p"] = p;
  r["h1Rank"] = rank;
  r["trivial"] = (rank == 0);
  out << (rank == 0 ? "trivial" : "nontrivial") << " (rank " << rank << " over F_" << p << ")\n";
  write_report(r, out, reportPath);
  return kExitFound;
}

int cmd_local_surfaces(const std::string& input, int p, const std::string& reportPath,
                       std::ostream& out) {
  Complex2 c = resolve_input(input);
  Verdict v = decide(c);
  if (v.status != Verdict::Status::Found || !v.sigma) {
    out << "no planar rotation system; local surfaces undefined\n";
    return v.status == Verdict::Status::None ? kExitNone : kExitInvalid;
  }
  auto surfaces = local_surfaces(c, *v.sigma);
  json r = report_envelope(input, c);
  json sj = json::array();
  for (const auto& s : surfaces) {
    sj.push_back({{"faces", s.orientations.size()},
                  {"V", s.V},
                  {"E", s.E},
                  {"F", s.F},
                  {"eulerChar", s.eulerChar()},
                  {"genus", s.genus()}});
  }
  r["localSurfaces"] = std::move(sj);
  EulerIdentityReport er = euler_identity_report(c, *v.sigma, p);
  r["eulerIdentity"] = {{"lhs", er.lhs},
                        {"equality", er.equality},
                        {"nullhomologousAtP", er.nullhomologousAtP},
                        {"genera", er.genera}};
  out << surfaces.size() << " local surface(s)\n";
  write_report(r, out, reportPath);
  return kExitFound;
}

int cmd_minor(const std::string& input, const std::string& scriptPath,
              const std::string& outputPath, const std::string& reportPath, std::ostream& out) {
  Complex2 c = resolve_input(input);
  std::ifstream f(scriptPath);
  if (!f) throw std::runtime_error("cannot read script '" + scriptPath + "'");
  json sj = json::parse(f);
  Diagnostics diag;
  auto script = script_from_json(sj, diag);
  if (!script) {
    std::string msg = "invalid script '" + scriptPath + "'";
    for (const auto& e : diag.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  Complex2 result = apply_script(c, *script);
  json r = report_envelope(input, c);
  r["script"] = {{"path", scriptPath}, {"ops", script->ops.size()}};
  r["result"] = complex_to_json(result);
  r["resultHash"] = complex_hash(result);
  if (!outputPath.empty()) {
    std::ofstream of(outputPath);
    of << complex_to_json(result).dump(2) << "\n";
    if (!of) throw std::runtime_error("cannot write '" + outputPath + "'");
  }
  out << "applied " << script->ops.size() << " op(s): " << result.vertices.size()
      << " vertices, " << result.edges.size() << " edges, " << result.faces.size()
      << " faces\n";
  write_report(r, out, reportPath);
  return kExitFound;
}

int cmd_gen(const std::string& name, bool list, const std::string& outputPath,
            std::ostream& out) {
  if (list) {
    for (const auto& e : catalog_entries()) out << e.name << "\t" << e.description << "\n";
    return kExitFound;
  }
  Complex2 c = gen(name);
  json j = complex_to_json(c);
  if (outputPath.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(outputPath);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error("cannot write '" + outputPath + "'");
    out << "wrote " << name << " to " << outputPath << "\n";
  }
  return kExitFound;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"emb3: planar rotation systems on 2-dimensional complexes"};
  app.require_subcommand(1);

  std::string reportPath;

  auto* validate = app.add_subcommand("validate", "check a complex description");
  std::string vInput;
  validate->add_option("input", vInput, "JSON file or gen:NAME")->required();
  validate->add_option("--report", reportPath, "write the JSON report to a file");

  auto* links = app.add_subcommand("links", "classify every link graph");
  std::string lInput;
  links->add_option("input", lInput, "JSON file or gen:NAME")->required();
  links->add_option("--report", reportPath);

  DecideArgs da;
  auto* decideCmd = app.add_subcommand("decide", "decide existence of a planar rotation system");
  decideCmd->add_option("input", da.input, "JSON file or gen:NAME")->required();
  decideCmd->add_option("--p", da.p, "prime for homology checks")->default_val(2);
  decideCmd->add_flag("--assume-simply-connected", da.assumeSimplyConnected);
  decideCmd->add_flag("--minimize", da.minimize, "minimize extracted certificates");
  decideCmd->add_flag("--general", da.general, "force the stretching pipeline");
  decideCmd->add_option("--emit-certificate", da.certificatePath,
                        "write the obstruction certificate to a file");
  decideCmd->add_option("--report", da.reportPath);

  DecideArgs oa;
  auto* obstruct = app.add_subcommand("obstruct", "extract an obstruction certificate");
  obstruct->add_option("input", oa.input, "JSON file or gen:NAME")->required();
  obstruct->add_option("--p", oa.p)->default_val(2);
  obstruct->add_flag("--minimize", oa.minimize);
  obstruct->add_flag("--general", oa.general);
  obstruct->add_option("--emit-certificate", oa.certificatePath);
  obstruct->add_option("--report", oa.reportPath);

  auto* homology = app.add_subcommand("homology", "first homology rank over F_p");
  std::string hInput;
  int hp = 2;
  homology->add_option("input", hInput, "JSON file or gen:NAME")->required();
  homology->add_option("--p", hp, "prime")->default_val(2);
  homology->add_option("--report", reportPath);

  auto* localSurfaces = app.add_subcommand("local-surfaces",
                                           "local surfaces of a found rotation system");
  std::string sInput;
  int sp = 2;
  localSurfaces->add_option("input", sInput, "JSON file or gen:NAME")->required();
  localSurfaces->add_option("--p", sp)->default_val(2);
  localSurfaces->add_option("--report", reportPath);

  auto* minor = app.add_subcommand("minor", "apply an operation script to a complex");
  std::string mInput, mScript, mOutput;
  minor->add_option("input", mInput, "JSON file or gen:NAME")->required();
  minor->add_option("--script", mScript, "script JSON file")->required();
  minor->add_option("--output", mOutput, "write the resulting complex to a file");
  minor->add_option("--report", reportPath);

  auto* genCmd = app.add_subcommand("gen", "emit a catalog complex");
  std::string gName, gOutput;
  bool gList = false;
  genCmd->add_option("name", gName, "catalog name");
  genCmd->add_flag("--list", gList, "list catalog entries");
  genCmd->add_option("--output", gOutput, "write to a file instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitFound : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(vInput, reportPath, out);
    if (links->parsed()) return cmd_links(lInput, reportPath, out);
    if (decideCmd->parsed()) return cmd_decide(da, out, /*obstructMode=*/false);
    if (obstruct->parsed()) return cmd_decide(oa, out, /*obstructMode=*/true);
    if (homology->parsed()) return cmd_homology(hInput, hp, reportPath, out);
    if (localSurfaces->parsed()) return cmd_local_surfaces(sInput, sp, reportPath, out);
    if (minor->parsed()) return cmd_minor(mInput, mScript, mOutput, reportPath, out);
    if (genCmd->parsed()) {
      if (!gList && gName.empty()) {
        err << "gen: a name or --list is required\n";
        return kExitUsage;
      }
      return cmd_gen(gName, gList, gOutput, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}

int run_cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace emb3
