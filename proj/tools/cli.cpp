#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "wsman/wsman.hpp"

namespace wsman::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw ConsistencyError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "'");
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << content)) throw UsageError("cannot write '" + path + "'");
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

std::string braced(const std::vector<std::size_t>& zero_based) {
  std::string out = "{";
  for (std::size_t i = 0; i < zero_based.size(); ++i) out += (i ? "," : "") + std::to_string(zero_based[i] + 1);
  return out + "}";
}

std::string tuple(const std::vector<std::size_t>& levels) {
  std::string out = "(";
  for (std::size_t i = 0; i < levels.size(); ++i) out += (i ? "," : "") + std::to_string(levels[i]);
  return out + ")";
}

const char* kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::relay_set: return "relay_set";
    case WitnessKind::source_set: return "source_set";
    case WitnessKind::none: break;
  }
  return "none";
}

Json witness_json(const std::string& check, WitnessKind kind, const std::vector<std::size_t>& members) {
  return Json{{"check", check}, {"kind", kind_name(kind)}, {"members", one_based(members)}};
}

// Everything one command produces; written out once, after it finishes.
struct Outcome {
  Json result = Json::object();
  Json witness = Json::array();
  Json matrix = nullptr;
  Json profile = nullptr;
  Json seed = nullptr;
  std::optional<std::string> input_digest;
  std::string summary;
  std::string artifact;
  int code = kOk;
};

struct Options {
  bool json = false;
  std::string path;
  std::string out_path;
  std::string log_path;
  std::string method = "both";
  std::string verifier = "flow";
  bool audit = false;
  std::uint64_t prime = kDefaultConstructionPrime;
  std::uint64_t seed = 1;
  std::size_t attempts = kDefaultMaxAttempts;
  std::uint64_t budget = kDefaultEnumerationBudget;
  std::size_t errors = 1;
  std::size_t trials = 100;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t p = 0;
  std::size_t exclude = 1;
};

struct Loaded {
  std::string text;
  std::string digest;
};

Loaded load(const Options& o, std::istream& in, Outcome& r) {
  Loaded l{read_input(o.path, in), {}};
  l.digest = sha256_hex(l.text);
  r.input_digest = l.digest;
  return l;
}

std::string sman_header(const Sman& s) {
  return "SMAN with k = " + std::to_string(s.k()) + " sources, n = " + std::to_string(s.n()) + " relays, " +
         std::to_string(s.link_count()) + " links\n";
}

void cmd_verify(const Options& o, std::istream& in, Outcome& r) {
  const Sman s = parse_sman(load(o, in, r).text);
  r.matrix = sman_to_json(s);
  std::ostringstream text;
  text << sman_header(s);

  const Verdict mds = check_mds_condition(s);
  r.result["mds"] = mds.holds;
  if (mds.holds) {
    text << "MDS: holds\n";
  } else {
    r.witness.push_back(witness_json("mds", mds.witness_kind, mds.witness));
    text << "MDS: fails, witness J=" << braced(mds.witness) << " hears only "
         << column_union(s, mds.witness).size() << " sources\n";
  }

  const bool brute = o.method == "brute" || o.method == "both";
  const bool flow = o.method == "flow" || o.method == "both";
  Json ws = Json::object();
  std::optional<bool> brute_holds;
  std::optional<bool> flow_holds;
  if (brute) {
    const Verdict v = check_weak_security_condition(s);
    brute_holds = v.holds;
    ws["brute"] = v.holds;
    if (v.holds) {
      text << "weak security [brute]: holds\n";
    } else {
      r.witness.push_back(witness_json("weak_security_brute", v.witness_kind, v.witness));
      text << "weak security [brute]: fails, witness J=" << braced(v.witness) << " hears only "
           << column_union(s, v.witness).size() << " sources\n";
    }
  }
  if (flow) {
    const MinCutReport report = check_min_cut_condition(s);
    flow_holds = report.verdict.holds;
    ws["flow"] = report.verdict.holds;
    if (report.verdict.holds) {
      text << "weak security [flow]: holds\n";
    } else {
      const auto& f = *report.failure;
      Json w = witness_json("weak_security_flow", report.verdict.witness_kind, report.verdict.witness);
      w["excluded_source"] = f.excluded_source + 1;
      w["sink"] = "t" + std::to_string(f.sink + 1);
      w["max_flow"] = f.flow;
      r.witness.push_back(std::move(w));
      text << "weak security [flow]: fails, witness I=" << braced(report.verdict.witness) << " (excluded source "
           << f.excluded_source + 1 << ", sink t" << f.sink + 1 << ", max flow " << f.flow << " < " << s.n()
           << ")\n";
    }
  }
  if (brute_holds && flow_holds && *brute_holds != *flow_holds) {
    throw ConsistencyError("brute-force and min-cut verifiers disagree on\n" + serialize_sman_text(s) + text.str());
  }
  r.result["weak_security"] = ws;

  if (mds.holds) {
    const auto levels = block_security_profile(s).levels;
    r.profile = levels;
    text << "block security profile: " << tuple(levels) << "\n";
  } else {
    text << "block security profile: undefined (MDS fails)\n";
  }
  r.summary = text.str();
}

void cmd_trim(const Options& o, std::istream& in, Outcome& r) {
  const Sman s = parse_sman(load(o, in, r).text);
  const TrimVerifier verifier = o.verifier == "brute" ? TrimVerifier::brute_force : TrimVerifier::flow;
  const TrimResult t = trim(s, {verifier, o.audit});

  std::string log;
  Json removals = Json::array();
  for (const auto& rm : t.removals) {
    log += "removed " + std::to_string(rm.source + 1) + " " + std::to_string(rm.relay + 1) + "\n";
    removals.push_back({rm.source + 1, rm.relay + 1});
  }
  r.result = {{"verifier", o.verifier},       {"links_before", s.link_count()},
              {"links_after", t.trimmed.link_count()}, {"verifier_calls", t.verifier_calls},
              {"removals", removals}};
  r.matrix = sman_to_json(t.trimmed);
  r.artifact = serialize_sman_text(t.trimmed);
  if (!o.log_path.empty()) write_file(o.log_path, log);
  r.summary = sman_header(s) + "removed " + std::to_string(t.removals.size()) + " links with the " + o.verifier +
              " verifier in " + std::to_string(t.verifier_calls) + " calls\n" + log;
}

void cmd_construct(const Options& o, std::istream& in, Outcome& r) {
  const Sman s = parse_sman(load(o, in, r).text);
  const FieldPrime field(o.prime);
  r.seed = o.seed;
  const ConstructionResult c = construct_code(s, field, o.seed, o.attempts);
  const bool mds = verify_mds_code(c.code);
  const bool ws = verify_weak_security_code(c.code);
  if (!mds || !ws) throw ConsistencyError("constructed matrix fails re-verification");
  r.result = {{"prime", o.prime}, {"attempts", c.attempts}, {"mds", mds}, {"weak_security", ws}};
  r.matrix = code_to_json(c.code.matrix());
  r.artifact = serialize_code_text(c.code.matrix());
  r.summary = sman_header(s) + "encoding matrix over GF(" + std::to_string(o.prime) + ") found after " +
              std::to_string(c.attempts) + " attempt" + (c.attempts == 1 ? "" : "s") +
              " (seed " + std::to_string(o.seed) + ")\nMDS: verified\nweak security: verified\n";
}

std::string code_header(const FieldMatrix& g) {
  return "code with k = " + std::to_string(g.rows()) + ", n = " + std::to_string(g.cols()) + " over GF(" +
         std::to_string(g.field().modulus()) + "), rank " + std::to_string(rank(g)) + "\n";
}

const char* verified(bool ok) { return ok ? "verified" : "fails"; }

void cmd_certify(const Options& o, std::istream& in, Outcome& r) {
  const FieldMatrix g = parse_code(load(o, in, r).text);
  const std::size_t k = g.rows();
  r.matrix = code_to_json(g);
  std::ostringstream text;
  text << code_header(g);

  const bool mds = verify_mds_code(g);
  const bool ws = verify_weak_security_code(g);
  r.result = {{"rank", rank(g)}, {"mds", mds}, {"weak_security", ws}};
  text << "MDS: " << verified(mds) << "\nweak security (algebraic): " << verified(ws) << "\n";

  std::vector<std::size_t> levels;
  for (std::size_t ell = 1; ell < k; ++ell) levels.push_back(block_security_level_by_rank(g, ell));

  bool within_budget = true;
  try {
    message_space_size(g, o.budget);
  } catch (const UsageError&) {
    within_budget = false;
  }
  if (within_budget) {
    // H(X_i | Y_E) minimized over |E| = k - 1; weak security means every entry is 1.
    std::vector<std::size_t> worst(k, 1);
    if (k >= 2) {
      for_each_combination(g.cols(), k - 1, [&](const std::vector<std::size_t>& observed) {
        for (std::size_t i = 0; i < k; ++i) {
          worst[i] = std::min(worst[i], conditional_entropy(g, {i}, observed, o.budget).q_ary_units);
        }
        return true;
      });
    }
    const bool exact = check_weak_security_exact(g, o.budget);
    const bool table = std::all_of(worst.begin(), worst.end(), [](std::size_t h) { return h == 1; });
    if (exact != ws || table != ws) {
      throw ConsistencyError("entropy oracle disagrees with the algebraic weak security verifier");
    }
    for (std::size_t ell = 1; ell < k; ++ell) {
      if (block_security_level_of_code(g, ell, o.budget) != levels[ell - 1]) {
        throw ConsistencyError("entropy oracle disagrees with the rank criterion at strength " +
                               std::to_string(ell));
      }
    }
    r.result["oracle"] = {{"ran", true}, {"weak_security", exact}, {"min_conditional_entropy", worst}};
    text << "weak security (entropy oracle): " << verified(exact) << ", min H(X_i | Y_E) over |E| = k-1: "
         << tuple(worst) << "\n";
  } else {
    r.result["oracle"] = {{"ran", false}, {"budget", o.budget}};
    text << "entropy oracle: skipped, q^k exceeds the budget of " << o.budget << "\n";
  }
  r.profile = levels;
  text << "block security levels: " << tuple(levels) << "\n";
  r.summary = text.str();
}

void cmd_simulate(const Options& o, std::istream& in, Outcome& r) {
  const FieldMatrix g = parse_code(load(o, in, r).text);
  if (o.errors > g.cols()) throw UsageError("cannot corrupt more than n coordinates");
  r.seed = o.seed;
  const NearestCodewordDecoder decoder(g, o.budget);
  const std::size_t distance = min_distance(g, o.budget);
  const std::size_t radius = distance == 0 ? 0 : (distance - 1) / 2;
  const Residue q = g.field().modulus();

  SplitMix64 rng(o.seed);
  std::size_t recovered = 0;
  std::size_t ambiguous = 0;
  std::vector<std::size_t> positions(g.cols());
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    Message x(g.rows());
    for (auto& v : x) v = static_cast<Residue>(rng.below(q));
    Codeword y = encode(g, x);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    for (std::size_t e = 0; e < o.errors; ++e) {
      std::swap(positions[e], positions[e + rng.below(g.cols() - e)]);
      auto& symbol = y[positions[e]];
      symbol = static_cast<Residue>((symbol + 1 + rng.below(q - 1)) % q);
    }
    try {
      if (decoder.decode(y).message == x) ++recovered;
    } catch (const AmbiguousDecodeError&) {
      ++ambiguous;
    }
  }
  if (o.errors <= radius && recovered != o.trials) {
    throw ConsistencyError("decoding failed within the guaranteed radius " + std::to_string(radius));
  }
  r.result = {{"errors", o.errors},   {"trials", o.trials},       {"recovered", recovered},
              {"ambiguous", ambiguous}, {"min_distance", distance}, {"guaranteed_radius", radius}};
  r.matrix = code_to_json(g);
  r.summary = code_header(g) + "minimum distance " + std::to_string(distance) + ", corrects up to " +
              std::to_string(radius) + " errors\nrecovered " + std::to_string(recovered) + "/" +
              std::to_string(o.trials) + " messages with " + std::to_string(o.errors) + " corrupted symbols (" +
              std::to_string(ambiguous) + " ambiguous, seed " + std::to_string(o.seed) + ")\n";
}

void cmd_cauchy(const Options& o, std::istream&, Outcome& r) {
  const EncodingMatrix c = cauchy_code(o.k, o.n, FieldPrime(o.p));
  r.result = {{"k", o.k}, {"n", o.n}, {"p", o.p}};
  r.matrix = code_to_json(c.matrix());
  r.artifact = serialize_code_text(c.matrix());
  r.summary = "Cauchy code with k = " + std::to_string(o.k) + ", n = " + std::to_string(o.n) + " over GF(" +
              std::to_string(o.p) + ")\n";
}

void cmd_flow_dump(const Options& o, std::istream& in, Outcome& r) {
  const Sman s = parse_sman(load(o, in, r).text);
  if (o.exclude < 1 || o.exclude > s.k()) throw UsageError("--exclude must be in [1, k]");
  const FlowNetwork net = build_flow_network(s, o.exclude - 1);
  std::vector<Capacity> flows;
  for (std::size_t t = 0; t + 1 < s.k(); ++t) flows.push_back(max_flow(net, net.source(), net.sink(t)).value);
  r.result = {{"excluded_source", o.exclude}, {"nodes", net.node_count()}, {"arcs", net.arcs().size()},
              {"infinity", net.infinity()}, {"sink_max_flows", flows}};
  r.matrix = sman_to_json(s);
  r.artifact = net.dump();
  std::string text = "flow network excluding source " + std::to_string(o.exclude) + ": " +
                     std::to_string(net.node_count()) + " nodes, " + std::to_string(net.arcs().size()) +
                     " arcs\nmax flow per sink:";
  for (std::size_t t = 0; t < flows.size(); ++t) text += " t" + std::to_string(t + 1) + "=" + std::to_string(flows[t]);
  r.summary = text + " (n = " + std::to_string(s.n()) + ")\n";
}

void fail(Outcome& r, int code, const std::string& status, const std::string& message) {
  r.code = code;
  r.result = {{"status", status}, {"error", message}};
  r.summary = "error: " + message + "\n";
  r.artifact.clear();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weakly secure MDS codes for simple multiple access networks"};
  app.name("wsman");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Write a JSON report to stdout");

  auto add_path = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("path", o.path, std::string(what) + " file, or - for stdin")->required();
  };
  auto add_out = [&](CLI::App* cmd) { cmd->add_option("-o,--out", o.out_path, "Write the output matrix here"); };

  std::function<void(const Options&, std::istream&, Outcome&)> command;
  auto bind = [&](CLI::App* cmd, auto fn) { cmd->callback([&command, fn] { command = fn; }); };

  auto* verify = app.add_subcommand("verify", "Check the MDS and weak security conditions of an SMAN");
  add_path(verify, "SMAN");
  verify->add_option("--method", o.method, "Weak security verifier")
      ->check(CLI::IsMember({"brute", "flow", "both"}))
      ->capture_default_str();
  bind(verify, cmd_verify);

  auto* trim_cmd = app.add_subcommand("trim", "Remove links down to n - k + 2 per source");
  add_path(trim_cmd, "SMAN");
  add_out(trim_cmd);
  trim_cmd->add_option("--log", o.log_path, "Write the removal log here");
  trim_cmd->add_option("--verifier", o.verifier, "Verifier used per step")
      ->check(CLI::IsMember({"brute", "flow"}))
      ->capture_default_str();
  trim_cmd->add_flag("--audit", o.audit, "Re-check every step with both verifiers");
  bind(trim_cmd, cmd_trim);

  auto* construct = app.add_subcommand("construct", "Build a weakly secure MDS encoding matrix");
  add_path(construct, "SMAN");
  add_out(construct);
  construct->add_option("--prime", o.prime, "Field size")->capture_default_str();
  construct->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  construct->add_option("--attempts", o.attempts, "Maximum attempts")->capture_default_str();
  bind(construct, cmd_construct);

  auto* certify = app.add_subcommand("certify", "Verify a code algebraically and by exhaustive entropy");
  add_path(certify, "Code");
  certify->add_option("--oracle-budget", o.budget, "Largest q^k the entropy oracle enumerates")
      ->capture_default_str();
  bind(certify, cmd_certify);

  auto* simulate = app.add_subcommand("simulate", "Decode random messages with random symbol errors");
  add_path(simulate, "Code");
  simulate->add_option("--errors", o.errors, "Corrupted symbols per codeword")->capture_default_str();
  simulate->add_option("--trials", o.trials, "Number of messages")->capture_default_str();
  simulate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  simulate->add_option("--budget", o.budget, "Largest q^k the decoder tabulates")->capture_default_str();
  bind(simulate, cmd_simulate);

  auto* cauchy = app.add_subcommand("cauchy", "Print the Cauchy code of the fully connected network");
  cauchy->add_option("k", o.k, "Sources")->required();
  cauchy->add_option("n", o.n, "Relays")->required();
  cauchy->add_option("p", o.p, "Field size")->required();
  add_out(cauchy);
  bind(cauchy, cmd_cauchy);

  auto* flow_dump = app.add_subcommand("flow-dump", "Print the flow network that excludes one source");
  add_path(flow_dump, "SMAN");
  add_out(flow_dump);
  flow_dump->add_option("--exclude", o.exclude, "Excluded source, 1-based")->capture_default_str();
  bind(flow_dump, cmd_flow_dump);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    command(o, in, r);
  } catch (const InfeasibleError& e) {
    fail(r, kInfeasible, "infeasible", e.what());
    if (e.kind() != WitnessKind::none) {
      r.witness.push_back(witness_json("weak_security", e.kind(), e.witness()));
      const char* label = e.kind() == WitnessKind::source_set ? "I" : "J";
      r.summary += "witness " + std::string(label) + "=" + braced(e.witness()) + "\n";
    }
  } catch (const RetryExhaustedError& e) {
    fail(r, kRetryExhausted, "retry_exhausted", e.what());
  } catch (const ConsistencyError& e) {
    fail(r, kInconsistent, "inconsistent", e.what());
  } catch (const ParseError& e) {
    fail(r, kInputError, "input_error", e.what());
  } catch (const std::invalid_argument& e) {
    fail(r, kInputError, "input_error", e.what());
  } catch (const std::domain_error& e) {
    fail(r, kInputError, "input_error", e.what());
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  try {
    if (r.code == kOk && !o.out_path.empty() && !r.artifact.empty()) write_file(o.out_path, r.artifact);
  } catch (const UsageError& e) {
    fail(r, kInputError, "input_error", e.what());
  }

  if (o.json) {
    Json report;
    report["command"] = app.get_subcommands().front()->get_name();
    report["arguments"] = args;
    report["input_sha256"] = r.input_digest ? Json(*r.input_digest) : Json(nullptr);
    report["result"] = r.result;
    report["witness"] = r.witness;
    report["matrix"] = r.matrix;
    report["profile"] = r.profile;
    report["seed"] = r.seed;
    report["wall_time_ms"] = elapsed.count();
    out << report.dump(2) << "\n";
  } else if (r.code != kOk) {
    err << r.summary;
  } else if (!r.artifact.empty() && o.out_path.empty()) {
    out << r.artifact;
    err << r.summary;
  } else {
    out << r.summary;
  }
  return r.code;
}

}  // namespace wsman::cli
