// roelab: experiment runner for finite-volume Roe-algebra models.
//
// Subcommands: build, pair, decay, untwist, edge, sweep, ktable.
// Exit codes: 0 ok, 2 config error, 3 precondition failure,
// 4 non-convergence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "roelab/config.hpp"
#include "roelab/experiments.hpp"
#include "roelab/io.hpp"
#include "roelab/ktheory.hpp"
#include "roelab/rng.hpp"
#include "roelab/roe_ops.hpp"

using namespace roelab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "roelab 0.1.0";

struct RunContext {
  IniConfig config;
  std::filesystem::path out_dir;
  std::string prefix;
  std::string subcommand;
  std::string manifest_hash;
  json manifest;

  std::filesystem::path path(const std::string& suffix) const {
    return out_dir / (prefix + "_" + suffix);
  }
};

RunContext make_context(const std::string& config_path, const std::string& subcommand) {
  RunContext ctx{IniConfig::parse_file(config_path), {}, {}, subcommand, {}, {}};
  ctx.out_dir = ctx.config.get_or("output", "dir", "out");
  ctx.prefix = ctx.config.get_or("output", "prefix", subcommand);
  ctx.manifest_hash = fnv1a_hex(std::string(kVersion) + "\n" + subcommand + "\n" + ctx.config.text());
  std::filesystem::create_directories(ctx.out_dir);
  ctx.manifest["tool"] = kVersion;
  ctx.manifest["subcommand"] = subcommand;
  ctx.manifest["config_path"] = config_path;
  ctx.manifest["manifest_hash"] = ctx.manifest_hash;
  return ctx;
}

void write_manifest(RunContext& ctx, std::vector<std::string> outputs) {
  ctx.manifest["outputs"] = outputs;
  std::ofstream out(ctx.path("manifest.json"));
  out << ctx.manifest.dump(2) << "\n";
}

json model_json(const ModelSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  j["d"] = spec.d;
  j["L"] = spec.L;
  j["N"] = spec.N;
  j["bc"] = spec.bc == Boundary::open ? "open" : "periodic";
  if (spec.kind == ModelKind::hofstadter) {
    j["flux_p"] = spec.flux_p;
    j["flux_q"] = spec.flux_q;
  }
  if (spec.kind == ModelKind::ssh_stack) {
    j["t1"] = spec.t1;
    j["t2"] = spec.t2;
    j["stack_axis"] = spec.stack_axis;
    j["interlayer"] = spec.interlayer;
  }
  if (spec.kind == ModelKind::delone_laplacian) {
    j["delone_amplitude"] = spec.delone_amplitude;
    j["delone_cutoff"] = spec.delone_cutoff;
  }
  return j;
}

json disorder_json(const DisorderSpec& dis) {
  return json{{"W", dis.W}, {"hopping_W", dis.hopping_W}, {"positional", dis.positional},
              {"seed", dis.seed}};
}

std::map<std::string, std::set<std::string>> schema_for(const std::string& subcommand) {
  std::map<std::string, std::set<std::string>> schema = {{"model", kModelKeys},
                                                         {"disorder", kDisorderKeys},
                                                         {"output", kOutputKeys}};
  if (subcommand == "pair" || subcommand == "sweep" || subcommand == "decay")
    schema["pairing"] = kPairingKeys;
  if (subcommand == "decay")
    schema["decay"] = {"target", "margin", "rapid_threshold"};
  if (subcommand == "edge")
    schema["edge"] = {"width", "k_points", "fermi_energy", "gap_index"};
  if (subcommand == "untwist")
    schema["untwist"] = {"flux_p", "flux_q", "L", "samples", "seed"};
  return schema;
}

int run_build(RunContext& ctx) {
  ModelSpec spec = model_from_config(ctx.config);
  DisorderSpec dis = disorder_from_config(ctx.config);
  BlockOperator h = build_hamiltonian(spec, dis);
  write_triplets_file(ctx.path("operator.rop").string(), h);
  ctx.manifest["model"] = model_json(spec);
  ctx.manifest["disorder"] = disorder_json(dis);
  ctx.manifest["propagation"] = propagation(h);
  write_manifest(ctx, {ctx.prefix + "_operator.rop"});
  std::cout << "wrote operator, dimension " << h.dim() << ", propagation " << propagation(h)
            << "\n";
  return 0;
}

void print_ladder_csv(std::ostream& out, const PairingResult& pairing,
                      const std::string& hash) {
  out << "L,index,kappa,sigma_min,largest_discarded,n_discarded,ill_conditioned,manifest_hash\n";
  for (const auto& w : pairing.windows)
    out << w.L << "," << w.raw_index << "," << format_double(w.kappa) << ","
        << format_double(w.sigma_min) << "," << format_double(w.largest_discarded) << ","
        << w.n_discarded << "," << (w.ill_conditioned ? 1 : 0) << "," << hash << "\n";
}

json pairing_record(const RunContext& ctx, const DisorderSpec& dis,
                    const PairingExperimentResult& result) {
  json rec;
  rec["manifest_hash"] = ctx.manifest_hash;
  rec["seed"] = dis.seed;
  rec["W"] = dis.W;
  rec["fermi_energy"] = result.fermi_energy;
  rec["clean_gap"] = result.clean_gap_width;
  rec["bulk_gap"] = result.bulk_gap.width;
  rec["tau"] = result.pairing.tau;
  rec["index"] = result.pairing.index;
  rec["converged"] = result.pairing.converged;
  const auto& last = result.pairing.windows.back();
  rec["L"] = last.L;
  rec["kappa"] = last.kappa;
  rec["sigma_min"] = last.sigma_min;
  rec["largest_discarded"] = last.largest_discarded;
  if (result.oracle_ran) rec["chern_oracle"] = result.oracle;
  return rec;
}

int run_pair(RunContext& ctx) {
  ModelSpec spec = model_from_config(ctx.config);
  DisorderSpec dis = disorder_from_config(ctx.config);
  PairingExperimentConfig cfg = pairing_from_config(ctx.config);
  PairingExperimentResult result = run_pairing_experiment(spec, dis, cfg);

  std::ofstream ladder(ctx.path("ladder.csv"));
  print_ladder_csv(ladder, result.pairing, ctx.manifest_hash);
  std::ofstream jsonl(ctx.path("pair.jsonl"));
  jsonl << pairing_record(ctx, dis, result).dump() << "\n";

  ctx.manifest["model"] = model_json(spec);
  ctx.manifest["disorder"] = disorder_json(dis);
  ctx.manifest["fermi_energy"] = result.fermi_energy;
  write_manifest(ctx, {ctx.prefix + "_ladder.csv", ctx.prefix + "_pair.jsonl"});

  if (result.oracle_ran)
    std::cout << "chern oracle = " << result.oracle << " (sector radius "
              << result.sectors.radius << ")\n";
  std::cout << "index = " << result.pairing.index << " ("
            << (result.pairing.converged ? "converged" : "not converged") << ")\n";
  return result.pairing.converged ? 0 : 4;
}

int run_decay(RunContext& ctx) {
  ModelSpec spec = model_from_config(ctx.config);
  DisorderSpec dis = disorder_from_config(ctx.config);
  std::string target = ctx.config.get_or("decay", "target", "projection");
  double margin = ctx.config.get_double("decay", "margin", 2.0);
  double threshold = ctx.config.get_double("decay", "rapid_threshold", 6.0);

  BlockOperator h = build_hamiltonian(spec, dis);
  DecayProfile profile;
  if (target == "hamiltonian") {
    profile = decay_profile(h);
  } else if (target == "projection") {
    PairingExperimentConfig cfg = pairing_from_config(ctx.config);
    BandStructure bands = clean_bands(spec);
    double ef = std::isnan(cfg.fermi_energy) ? bands.fermi_in_gap(cfg.gap_index)
                                             : cfg.fermi_energy;
    SpectralData data = eigendecompose(h);
    GapInfo gap;
    gap.has_gap = true;
    auto [lo, hi] = bands.gap_interval(cfg.gap_index);
    gap.below = lo;
    gap.above = hi;
    gap.width = hi - lo;
    profile = decay_profile(fermi_projection_bulk(data, h, ef, gap).p);
  } else {
    throw Error(Error::Kind::config, "decay target must be hamiltonian or projection");
  }

  DecayFit fit = classify_decay(profile, margin, threshold);

  std::ofstream csv(ctx.path("profile.csv"));
  csv << "offset,norm,manifest_hash\n";
  for (const auto& [k, v] : profile.entries) {
    std::string key;
    for (size_t i = 0; i < k.size(); ++i) key += (i ? " " : "") + std::to_string(k[i]);
    csv << key << "," << format_double(v) << "," << ctx.manifest_hash << "\n";
  }

  json rec;
  rec["manifest_hash"] = ctx.manifest_hash;
  rec["target"] = target;
  rec["class"] = to_string(fit.cls);
  rec["band_radius"] = fit.band_radius;
  rec["exp_rate"] = fit.exp_rate;
  rec["exp_residual"] = fit.exp_residual;
  rec["poly_order"] = fit.poly_order;
  rec["poly_residual"] = fit.poly_residual;
  rec["shells_used"] = fit.shells_used;
  rec["note"] = fit.note;
  std::ofstream jsonl(ctx.path("decay.jsonl"));
  jsonl << rec.dump() << "\n";

  ctx.manifest["model"] = model_json(spec);
  write_manifest(ctx, {ctx.prefix + "_profile.csv", ctx.prefix + "_decay.jsonl"});

  std::cout << "class = " << to_string(fit.cls);
  if (fit.cls == DecayClass::exponential) std::cout << ", rate " << fit.exp_rate;
  if (fit.cls == DecayClass::banded) std::cout << ", band radius " << fit.band_radius;
  if (fit.cls == DecayClass::rapid || fit.cls == DecayClass::none)
    std::cout << ", fitted order " << fit.poly_order;
  std::cout << "\n";
  return 0;
}

int run_untwist(RunContext& ctx) {
  int p = ctx.config.get_int("untwist", "flux_p", 1);
  int q = ctx.config.get_int("untwist", "flux_q", 3);
  int l = ctx.config.get_int("untwist", "L", 4);
  int samples = ctx.config.get_int("untwist", "samples", 1000);
  std::uint64_t seed = ctx.config.get_u64("untwist", "seed", 1);

  Window win(2, l);
  double flux = 2.0 * M_PI * p / q;
  Cocycle w = magnetic_cocycle(flux);
  CocycleCheckResult check = cocycle_check(w, win, samples, seed);

  Site origin{{0, 0}};
  GaugeFunction v = untwist(w, origin, win);
  SequenceRng rng(seed + 1);
  double roundtrip = 0.0;
  for (int i = 0; i < samples; ++i) {
    Site x = win.site(rng.index(win.size()));
    Site z = win.site(rng.index(win.size()));
    Site y = win.site(rng.index(win.size()));
    Complex rec = v.eval(x, z) * v.eval(z, y) / v.eval(x, y);
    roundtrip = std::max(roundtrip, std::abs(rec - w.eval(x, z, y)));
  }

  json rec;
  rec["manifest_hash"] = ctx.manifest_hash;
  rec["flux_p"] = p;
  rec["flux_q"] = q;
  rec["L"] = l;
  rec["samples"] = samples;
  rec["cocycle_ok"] = check.ok;
  rec["cocycle_max_violation"] = check.max_violation;
  rec["untwist_roundtrip_error"] = roundtrip;
  std::ofstream jsonl(ctx.path("untwist.jsonl"));
  jsonl << rec.dump() << "\n";
  write_manifest(ctx, {ctx.prefix + "_untwist.jsonl"});

  std::cout << "cocycle max violation = " << check.max_violation
            << ", untwist round-trip error = " << roundtrip << "\n";
  return check.ok && roundtrip < 1e-10 ? 0 : 3;
}

int run_edge(RunContext& ctx) {
  ModelSpec spec = model_from_config(ctx.config);
  int width = ctx.config.get_int("edge", "width", 27);
  int k_points = ctx.config.get_int("edge", "k_points", 240);
  int gap_index = ctx.config.get_int("edge", "gap_index", 0);
  double ef = ctx.config.get_double("edge", "fermi_energy",
                                    std::numeric_limits<double>::quiet_NaN());
  if (std::isnan(ef)) ef = clean_bands(spec).fermi_in_gap(gap_index);
  if (spec.kind == ModelKind::hofstadter && width < 4 * spec.flux_q)
    std::cerr << "warning: strip width " << width << " below 4q = " << 4 * spec.flux_q << "\n";

  EdgeSpectrumResult result = edge_spectrum(spec, ef, width, k_points);

  std::ofstream csv(ctx.path("edge.csv"));
  csv << "momentum,energy,lower_weight,upper_weight,manifest_hash\n";
  for (const auto& row : result.curve)
    csv << format_double(row.momentum) << "," << format_double(row.energy) << ","
        << format_double(row.lower_weight) << "," << format_double(row.upper_weight) << ","
        << ctx.manifest_hash << "\n";

  ctx.manifest["model"] = model_json(spec);
  ctx.manifest["fermi_energy"] = ef;
  ctx.manifest["width"] = width;
  write_manifest(ctx, {ctx.prefix + "_edge.csv"});

  std::cout << "net chirality: lower edge = " << result.net_chirality_lower
            << ", upper edge = " << result.net_chirality_upper << "\n";
  return 0;
}

int run_sweep(RunContext& ctx) {
  ModelSpec spec = model_from_config(ctx.config);
  DisorderSpec base = disorder_from_config(ctx.config);
  PairingExperimentConfig cfg = pairing_from_config(ctx.config);

  std::vector<double> w_list = ctx.config.get_double_list("disorder", "W_list");
  if (w_list.empty()) w_list.push_back(base.W);
  std::vector<std::uint64_t> seeds = ctx.config.get_u64_list("disorder", "seeds");
  if (seeds.empty()) seeds.push_back(base.seed);

  struct Job {
    double w;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double w : w_list)
    for (std::uint64_t s : seeds) jobs.push_back({w, s});
  // canonical job order: outputs do not depend on list order in the config
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.w != b.w ? a.w < b.w : a.seed < b.seed;
  });
  jobs.erase(std::unique(jobs.begin(), jobs.end(),
                         [](const Job& a, const Job& b) {
                           return a.w == b.w && a.seed == b.seed;
                         }),
             jobs.end());

  struct Outcome {
    Job job;
    bool aborted = false;
    std::string abort_reason;
    json record;
  };

  auto run_job = [&](const Job& job) {
    Outcome out{job, false, "", {}};
    DisorderSpec dis = base;
    dis.W = job.w;
    dis.seed = job.seed;
    try {
      PairingExperimentResult result = run_pairing_experiment(spec, dis, cfg);
      out.record = pairing_record(ctx, dis, result);
    } catch (const Error& err) {
      if (err.kind() != Error::Kind::precondition) throw;
      out.aborted = true;
      out.abort_reason = err.what();
      out.record = json{{"manifest_hash", ctx.manifest_hash}, {"seed", job.seed},
                        {"W", job.w},   {"aborted", true},    {"reason", err.what()}};
    }
    return out;
  };

  int threads = 1;
  if (const char* env = std::getenv("ROELAB_THREADS")) threads = std::max(1, std::atoi(env));
  std::vector<Outcome> outcomes(jobs.size());
  if (threads <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run_job(jobs[i]);
  } else {
    std::vector<std::pair<size_t, std::future<Outcome>>> futures;
    size_t next = 0;
    while (next < jobs.size() || !futures.empty()) {
      while (next < jobs.size() && futures.size() < static_cast<size_t>(threads)) {
        futures.emplace_back(next, std::async(std::launch::async, run_job, jobs[next]));
        ++next;
      }
      futures.front().second.wait();
      outcomes[futures.front().first] = futures.front().second.get();
      futures.erase(futures.begin());
    }
  }

  // deterministic merge: jobs are already in (W, seed) order
  std::ofstream jsonl(ctx.path("sweep.jsonl"));
  std::map<std::pair<double, int>, int> histogram;  // (W, index) -> count
  std::map<double, int> aborted;
  for (const auto& out : outcomes) {
    jsonl << out.record.dump() << "\n";
    if (out.aborted)
      aborted[out.job.w]++;
    else
      histogram[{out.job.w, out.record["index"].get<int>()}]++;
  }

  std::ofstream csv(ctx.path("sweep_histogram.csv"));
  csv << "W,index,count,manifest_hash\n";
  for (const auto& [key, count] : histogram)
    csv << format_double(key.first) << "," << key.second << "," << count << ","
        << ctx.manifest_hash << "\n";
  for (const auto& [w, count] : aborted)
    csv << format_double(w) << ",aborted," << count << "," << ctx.manifest_hash << "\n";

  ctx.manifest["model"] = model_json(spec);
  ctx.manifest["W_list"] = w_list;
  ctx.manifest["seeds"] = seeds;
  write_manifest(ctx, {ctx.prefix + "_sweep.jsonl", ctx.prefix + "_sweep_histogram.csv"});

  for (const auto& [key, count] : histogram)
    std::cout << "W = " << key.first << ": index " << key.second << " x" << count << "\n";
  for (const auto& [w, count] : aborted)
    std::cout << "W = " << w << ": aborted x" << count << " (gap closed)\n";
  return 0;
}

int run_ktable(const std::string& field, int dmax, const std::string& out_path) {
  using namespace roelab::ktheory;
  auto rows = kitaev_table(dmax);
  std::vector<KitaevRow> selected;
  for (const auto& row : rows) {
    if (field == "complex" && row.field != Field::cplx) continue;
    if (field == "real" && row.field != Field::real) continue;
    selected.push_back(row);
  }
  std::string text = render_kitaev_table(selected);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume laboratory for Roe-algebra models of disordered "
               "topological insulators"};
  app.require_subcommand(1);

  std::string config_path;
  std::string ktable_field = "both";
  int ktable_dmax = 8;
  std::string ktable_out;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "configuration file")->required();
  };

  CLI::App* build = app.add_subcommand("build", "assemble a model and write its operator file");
  add_config(build);
  CLI::App* pair = app.add_subcommand("pair", "index pairing ladder with the Chern oracle");
  add_config(pair);
  CLI::App* decay = app.add_subcommand("decay", "decay profile and classification");
  add_config(decay);
  CLI::App* untwist_cmd = app.add_subcommand("untwist", "magnetic cocycle round-trip report");
  add_config(untwist_cmd);
  CLI::App* edge = app.add_subcommand("edge", "strip spectrum and chiral edge count");
  add_config(edge);
  CLI::App* sweep = app.add_subcommand("sweep", "disorder ensemble index statistics");
  add_config(sweep);
  CLI::App* ktable = app.add_subcommand("ktable", "symbolic K-theory tables");
  ktable->add_option("--field", ktable_field, "complex, real or both")
      ->check(CLI::IsMember({"complex", "real", "both"}));
  ktable->add_option("--dmax", ktable_dmax, "largest dimension column");
  ktable->add_option("--out", ktable_out, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ktable->parsed()) return run_ktable(ktable_field, ktable_dmax, ktable_out);

    std::string sub = app.get_subcommands().front()->get_name();
    RunContext ctx = make_context(config_path, sub);
    ctx.config.validate(schema_for(sub));

    if (sub == "build") return run_build(ctx);
    if (sub == "pair") return run_pair(ctx);
    if (sub == "decay") return run_decay(ctx);
    if (sub == "untwist") return run_untwist(ctx);
    if (sub == "edge") return run_edge(ctx);
    if (sub == "sweep") return run_sweep(ctx);
    std::cerr << "unknown subcommand\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    switch (err.kind()) {
      case Error::Kind::config: return 2;
      case Error::Kind::precondition: return 3;
      case Error::Kind::no_convergence: return 4;
    }
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
}
