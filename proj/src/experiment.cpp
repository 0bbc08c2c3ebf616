#include "mnl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "mnl/static_opt.hpp"

namespace mnl {

Instance gen_uniform(int n, int capacity, std::uint64_t seed) {
  if (n < capacity || capacity < 1) {
    throw std::invalid_argument("generator needs n >= K >= 1");
  }
  SplitMix64 rng(seed);
  std::vector<double> rewards(n), prefs(n);
  for (int i = 0; i < n; ++i) {
    rewards[i] = rng.uniform(0.1, 0.6);
    prefs[i] = rng.uniform(0.1, 0.6);
  }
  return Instance::create(std::move(rewards), std::move(prefs), capacity);
}

Instance gen_gaussian(int n, int capacity, std::uint64_t seed) {
  if (n < capacity || capacity < 1) {
    throw std::invalid_argument("generator needs n >= K >= 1");
  }
  SplitMix64 rng(seed);
  std::vector<double> rewards(n), prefs(n);
  for (int i = 0; i < n; ++i) {
    prefs[i] = 1.0 - rng.uniform();  // (0, 1]
    double r;
    do {
      r = 0.5 + 0.1 * standard_normal(rng);
    } while (!(r > 0.0 && r <= 1.0));
    rewards[i] = r;
  }
  return Instance::create(std::move(rewards), std::move(prefs), capacity);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream row(line);
  while (std::getline(row, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = field.find_first_not_of(' ');
    fields.push_back(start == std::string::npos ? std::string{} : field.substr(start));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_all_int(const std::string& s, long long& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

RatingsIngest ingest_ratings(const std::string& csv_path, long min_count,
                             long max_count, double rating_scale,
                             double count_denominator, int capacity,
                             bool allow_extra_columns) {
  if (min_count > max_count) {
    throw std::invalid_argument("min_count must not exceed max_count");
  }
  if (!(rating_scale > 0.0) || !(count_denominator > 0.0)) {
    throw std::invalid_argument("rating_scale and count_denominator must be positive");
  }
  std::ifstream in(csv_path);
  if (!in) throw ParseError("cannot open ratings file: " + csv_path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(csv_path + ": missing header");
  std::vector<std::string> header = split_csv_row(line);
  auto find_col = [&](const std::string& name) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      std::string lowered = header[c];
      std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      if (lowered == name) return static_cast<int>(c);
    }
    return -1;
  };
  int id_col = find_col("item_id");
  int rating_col = find_col("rating");
  if (id_col < 0 || rating_col < 0) {
    throw ParseError(csv_path + ": header must name item_id and rating columns");
  }
  if (!allow_extra_columns && header.size() != 2) {
    throw ParseError(csv_path + ": expected exactly columns item_id,rating");
  }

  struct Tally {
    long count = 0;
    double sum = 0.0;
  };
  std::map<std::string, Tally> tallies;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields = split_csv_row(line);
    if (static_cast<int>(fields.size()) <= std::max(id_col, rating_col)) {
      throw ParseError(csv_path + ": line " + std::to_string(line_no) + ": too few columns");
    }
    const std::string& id = fields[id_col];
    if (id.empty()) {
      throw ParseError(csv_path + ": line " + std::to_string(line_no) + ": empty item id");
    }
    double rating;
    try {
      std::size_t used = 0;
      rating = std::stod(fields[rating_col], &used);
      if (used != fields[rating_col].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(csv_path + ": line " + std::to_string(line_no) + ": bad rating '" +
                       fields[rating_col] + "'");
    }
    Tally& t = tallies[id];
    ++t.count;
    t.sum += rating;
  }

  std::vector<std::string> kept;
  for (const auto& [id, tally] : tallies) {
    if (tally.count >= min_count && tally.count <= max_count) kept.push_back(id);
  }
  if (kept.empty()) {
    throw ParseError(csv_path + ": no item has a rating count in [" +
                     std::to_string(min_count) + ", " + std::to_string(max_count) + "]");
  }
  // ascending original id: numeric when every id is an integer
  bool all_numeric = true;
  for (const std::string& id : kept) {
    long long ignored;
    if (!parse_all_int(id, ignored)) {
      all_numeric = false;
      break;
    }
  }
  if (all_numeric) {
    std::sort(kept.begin(), kept.end(), [](const std::string& a, const std::string& b) {
      long long na = 0, nb = 0;
      parse_all_int(a, na);
      parse_all_int(b, nb);
      return na < nb;
    });
  } else {
    std::sort(kept.begin(), kept.end());
  }

  std::vector<double> rewards, prefs;
  for (const std::string& id : kept) {
    const Tally& t = tallies[id];
    double r = (t.sum / t.count) / rating_scale;
    double v = static_cast<double>(t.count) / count_denominator;
    if (!(r > 0.0)) {
      throw ParseError(csv_path + ": item '" + id + "' has non-positive mean rating");
    }
    rewards.push_back(std::min(r, 1.0));
    prefs.push_back(std::min(v, 1.0));
  }
  return RatingsIngest{Instance::create(std::move(rewards), std::move(prefs), capacity),
                       std::move(kept)};
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_ids(const Assortment& s) {
  std::string out;
  for (std::size_t i = 0; i < s.items().size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(s.items()[i]);
  }
  return out;
}

Instance instance_from_generator(const GeneratorSpec& gen, std::uint64_t seed) {
  switch (gen.kind) {
    case InstanceKind::uniform:
      return gen_uniform(gen.n, gen.k, seed);
    case InstanceKind::gaussian:
      return gen_gaussian(gen.n, gen.k, seed);
    case InstanceKind::i1:
      return make_lower_bound_instance(LowerBoundInstance::I1, gen.k, gen.delta_param);
    case InstanceKind::i2:
      return make_lower_bound_instance(LowerBoundInstance::I2, gen.k, gen.delta_param);
    case InstanceKind::example1:
      return make_example_instance(1, gen.n, gen.k);
    case InstanceKind::example2:
      return make_example_instance(2, gen.n, gen.k, gen.epsilon);
    default:
      throw std::invalid_argument("generator kind cannot be built here");
  }
}

bool per_trial_instance(const GeneratorSpec& gen) {
  return gen.kind == InstanceKind::uniform || gen.kind == InstanceKind::gaussian;
}

Assortment ground_truth(const Instance& inst) {
  return inst.n() <= 20 ? brute_force_optimal(inst).best : optimal(inst).best;
}

void validate_config(const ExperimentConfig& cfg) {
  const int sources = (cfg.generator ? 1 : 0) + (cfg.instance_file ? 1 : 0) +
                      (cfg.ratings ? 1 : 0);
  if (sources != 1) {
    throw std::invalid_argument("exactly one instance source must be configured");
  }
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.out_path.empty()) throw std::invalid_argument("output path is required");
  const bool fixed_confidence = cfg.algo == Algo::basic || cfg.algo == Algo::improved;
  if (fixed_confidence) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
      throw std::invalid_argument("delta must lie in (0, 1)");
    }
  } else if (!cfg.budget) {
    throw std::invalid_argument("unifb/unifg require a pull budget");
  }
  if (cfg.budget && *cfg.budget < 1) throw std::invalid_argument("budget must be >= 1");
}

RunResult dispatch(Algo algo, Environment& env, double delta,
                   std::optional<std::uint64_t> budget, std::ostream* trace) {
  RunOptions opts;
  opts.trace = trace;
  switch (algo) {
    case Algo::basic:
    case Algo::improved: {
      opts.budget = budget;
      return algo == Algo::basic ? run_basic(env, delta, opts)
                                 : run_improved(env, delta, opts);
    }
    case Algo::unifb:
      return run_unif_b(env, *budget);
    case Algo::unifg:
      return run_unif_g(env, *budget);
  }
  throw std::logic_error("unknown algorithm");
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);

  // Shared instance (and its ground truth) for non-resampled sources. Every
  // source carries the simulation preferences, so ground truth is always
  // computable; the correct flag stays optional for sources that may not.
  std::optional<Instance> shared;
  std::optional<Assortment> shared_truth;
  const bool has_truth = true;
  if (cfg.instance_file) {
    shared = load_instance(*cfg.instance_file);
  } else if (cfg.ratings) {
    const RatingsSpec& r = *cfg.ratings;
    shared = ingest_ratings(r.path, r.min_count, r.max_count, r.rating_scale,
                            r.count_denominator, r.k, r.allow_extra_columns).instance;
  } else if (!per_trial_instance(*cfg.generator)) {
    shared = instance_from_generator(*cfg.generator, 0);
  }
  if (shared && has_truth) shared_truth = ground_truth(*shared);

  std::ofstream trace_file;
  if (cfg.trace_path) {
    trace_file.open(*cfg.trace_path);
    if (!trace_file) throw std::runtime_error("cannot open trace file: " + *cfg.trace_path);
  }

  ExperimentSummary summary;
  summary.records.resize(cfg.trials);

  auto run_trial = [&](int t) {
    const std::uint64_t trial_seed = substream_seed(cfg.master_seed, t);
    Instance inst = shared ? *shared
                           : instance_from_generator(*cfg.generator,
                                                     substream_seed(trial_seed, 0));
    Environment env(inst, substream_seed(trial_seed, 1));
    std::ostream* trace = (t == 0 && trace_file.is_open()) ? &trace_file : nullptr;

    const auto t0 = std::chrono::steady_clock::now();
    RunResult result = dispatch(cfg.algo, env, cfg.delta, cfg.budget, trace);
    const auto t1 = std::chrono::steady_clock::now();

    TrialRecord& rec = summary.records[t];
    rec.trial = t;
    rec.seed = trial_seed;
    rec.pulls = result.pulls;
    rec.rounds = result.rounds;
    rec.answer = result.answer;
    if (has_truth) {
      const Assortment truth = shared_truth ? *shared_truth : ground_truth(inst);
      rec.correct = (result.answer == truth);
    }
    if (cfg.timing) {
      rec.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, cfg.trials);
  if (jobs <= 1) {
    for (int t = 0; t < cfg.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) {
            run_trial(t);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  // Summary statistics (population stddev).
  double sum_pulls = 0.0, sum_rounds = 0.0;
  int incorrect = 0;
  for (const TrialRecord& rec : summary.records) {
    sum_pulls += static_cast<double>(rec.pulls);
    sum_rounds += rec.rounds;
    if (rec.correct && !*rec.correct) ++incorrect;
  }
  summary.mean_pulls = sum_pulls / cfg.trials;
  summary.mean_rounds = sum_rounds / cfg.trials;
  double var = 0.0;
  for (const TrialRecord& rec : summary.records) {
    const double d = static_cast<double>(rec.pulls) - summary.mean_pulls;
    var += d * d;
  }
  summary.stddev_pulls = std::sqrt(var / cfg.trials);
  if (has_truth) {
    summary.error_rate = static_cast<double>(incorrect) / cfg.trials;
  }

  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  out << "trial,seed,correct,pulls,rounds,answer_ids,wall_ms\n";
  for (const TrialRecord& rec : summary.records) {
    out << rec.trial << ',' << rec.seed << ','
        << (rec.correct ? (*rec.correct ? "1" : "0") : "") << ',' << rec.pulls << ','
        << rec.rounds << ',' << fmt_ids(rec.answer) << ',' << rec.wall_ms << '\n';
  }
  out << "SUMMARY," << (summary.error_rate ? fmt_double(*summary.error_rate) : "") << ','
      << fmt_double(summary.mean_pulls) << ',' << fmt_double(summary.stddev_pulls) << ','
      << fmt_double(summary.mean_rounds) << '\n';
  return summary;
}

Instance resolve_instance(const ExperimentConfig& cfg) {
  const int sources = (cfg.generator ? 1 : 0) + (cfg.instance_file ? 1 : 0) +
                      (cfg.ratings ? 1 : 0);
  if (sources != 1) {
    throw std::invalid_argument("exactly one instance source must be configured");
  }
  if (cfg.instance_file) return load_instance(*cfg.instance_file);
  if (cfg.ratings) {
    const RatingsSpec& r = *cfg.ratings;
    return ingest_ratings(r.path, r.min_count, r.max_count, r.rating_scale,
                          r.count_denominator, r.k, r.allow_extra_columns).instance;
  }
  const std::uint64_t seed =
      substream_seed(substream_seed(cfg.master_seed, 0), 0);  // trial 0's stream
  return instance_from_generator(*cfg.generator, seed);
}

void write_metrics_csv(const ExperimentConfig& cfg) {
  if (cfg.out_path.empty()) throw std::invalid_argument("output path is required");
  const Instance inst = resolve_instance(cfg);
  const GapProfile profile = gap_profile(inst);
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  out << "item,reward,preference,advantage,gap,in_best\n";
  for (ItemId i = 1; i <= inst.n(); ++i) {
    out << i << ',' << fmt_double(inst.reward(i)) << ',' << fmt_double(inst.preference(i))
        << ',' << fmt_double(profile.advantages[i - 1]) << ','
        << fmt_double(profile.gaps[i - 1]) << ',' << (profile.best.contains(i) ? 1 : 0)
        << '\n';
  }
  out << "SUMMARY," << fmt_double(profile.theta) << ',' << fmt_double(profile.h1) << ','
      << fmt_double(profile.h2) << ',' << fmt_ids(profile.best) << ",\n";
}

}  // namespace mnl
