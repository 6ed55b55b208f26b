#include "symtag/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "symtag/corpus.hpp"
#include "symtag/error.hpp"
#include "symtag/eval.hpp"
#include "symtag/lexicon.hpp"
#include "symtag/perturb.hpp"
#include "symtag/rank.hpp"
#include "symtag/report.hpp"

namespace symtag::cli {

namespace {

const std::vector<std::string> kContextWords = {
    "i",     "have", "had",   "a",     "the",   "and",  "my",   "since", "two",   "days",  "it",
    "was",   "is",   "still", "after", "then",  "but",  "now",  "with",  "some",  "week",  "bad",
    "feels", "like", "got",   "very",  "today", "also", "on",   "off",   "going", "been",  "."};
const std::vector<std::string> kEntityWords = {
    "fever", "cough",  "headache", "fatigue", "chills",    "nausea", "chest", "pain",   "sore", "throat",
    "loss",  "smell",  "taste",    "short",   "breath",    "runny",  "nose",  "aches",  "dry",  "tight",
    "brain", "fog",    "muscle",   "joint",   "dizziness", "cold",   "hands", "sweats", "body", "weak"};

std::string read_all(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_all(const std::string& path, const std::string& data, std::ostream& out) {
  if (path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot open '" + path + "' for writing");
  f << data;
  if (!f) throw DataError("failed writing '" + path + "'");
}

std::string stem_of(const std::string& path) {
  if (path == "-") return "stdin";
  return std::filesystem::path(path).stem().string();
}

Corpus load_corpus(const std::string& path, std::istream& in) {
  const std::string text = read_all(path, in);
  try {
    return parse_corpus(std::string_view(text), stem_of(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Scoring and stats consume valid corpora; fix orphan I tags and say so.
Corpus load_repaired(const std::string& path, std::istream& in, std::ostream& err) {
  Corpus c = load_corpus(path, in);
  if (auto v = validate(c); !v.empty()) {
    err << path << ": repaired " << v.size() << " invalid I tag(s)\n";
    c = repair_labels(std::move(c));
  }
  return c;
}

MetricGrid load_grids(const std::vector<std::string>& paths, std::istream& in) {
  MetricGrid grid;
  for (const auto& p : paths) {
    const std::string text = read_all(p, in);
    try {
      grid = merge_grids(grid, load_grid(text));
    } catch (const ParseError& e) {
      throw DataError(p + ": " + e.what());
    }
  }
  return grid;
}

Format parse_format(const std::string& f) { return f == "csv" ? Format::kCsv : Format::kMarkdown; }

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError("bad length weight '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entity-recognition corpus toolkit: validate, perturb, mix, score and rank", "symtag"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool strict = false;
  std::string format = "md";
  int digits = 2;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output table format")->check(CLI::IsMember({"md", "csv"}));
    sub->add_option("--digits", digits, "Decimal digits for fractions")->check(CLI::Range(1, 6));
  };

  // validate
  std::string validate_in;
  auto* validate_cmd = app.add_subcommand("validate", "Report IOB violations");
  validate_cmd->add_option("input", validate_in, "Corpus file")->required();
  validate_cmd->add_flag("--strict", strict, "Exit 1 when any violation is found");

  // stats
  std::vector<std::string> stats_in;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics table");
  stats_cmd->add_option("inputs", stats_in, "Corpus files")->required();
  add_format(stats_cmd);

  // perturb
  std::string perturb_mode, lexicon_path, perturb_in, perturb_out, log_path;
  auto* perturb_cmd = app.add_subcommand("perturb", "Normalize or de-normalize entity spans");
  perturb_cmd->add_option("--mode", perturb_mode)->required()->check(CLI::IsMember({"normalize", "denormalize"}));
  perturb_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  perturb_cmd->add_option("--seed", seed);
  perturb_cmd->add_option("--log", log_path, "Write the replacement audit CSV here");
  perturb_cmd->add_option("input", perturb_in)->required();
  perturb_cmd->add_option("output", perturb_out)->required();

  // mix
  std::string mix_a, mix_b, mix_out, mix_size = "auto";
  auto* mix_cmd = app.add_subcommand("mix", "Half-and-half sample of two corpora");
  mix_cmd->add_option("a", mix_a)->required();
  mix_cmd->add_option("b", mix_b)->required();
  mix_cmd->add_option("output", mix_out)->required();
  mix_cmd->add_option("--size", mix_size, "Target sentence count or 'auto'");
  mix_cmd->add_option("--seed", seed);

  // eval
  std::string gold_path, pred_path, match = "both", fp_out, fn_out;
  bool by_length = false;
  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against gold");
  eval_cmd->add_option("--gold", gold_path)->required();
  eval_cmd->add_option("--pred", pred_path)->required();
  eval_cmd->add_option("--match", match)->check(CLI::IsMember({"exact", "partial", "both"}));
  eval_cmd->add_flag("--by-length", by_length, "Append the per-length exact-match table");
  eval_cmd->add_option("--fp-out", fp_out, "Write false-positive terms here");
  eval_cmd->add_option("--fn-out", fn_out, "Write false-negative terms here");
  add_format(eval_cmd);

  // rank
  std::vector<std::string> grid_paths, group_specs;
  auto* rank_cmd = app.add_subcommand("rank", "Score/pScore table from a metric grid");
  rank_cmd->add_option("--grid", grid_paths, "Grid CSV (repeatable; merged)")->required();
  rank_cmd->add_option("--group", group_specs, "name=test1,test2,...")->required();
  add_format(rank_cmd);

  // report
  bool mark_top = false;
  std::vector<std::string> report_grids, report_preds;
  std::string report_gold;
  auto* report_cmd = app.add_subcommand("report", "Render a metric grid or per-length tables");
  report_cmd->add_option("--grid", report_grids, "Grid CSV (repeatable; merged)");
  report_cmd->add_flag("--mark-top", mark_top, "Mark best (*) and second-best (^) per column");
  report_cmd->add_option("--gold", report_gold);
  report_cmd->add_option("--pred", report_preds, "Prediction files (repeatable)");
  add_format(report_cmd);

  // synth
  std::string synth_out, weights = "0.5,0.25,0.15,0.1", vocab_path, category = "SYM";
  std::size_t n_sentences = 100;
  double rate = 0.33;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth_cmd->add_option("output", synth_out)->required();
  synth_cmd->add_option("--sentences", n_sentences);
  synth_cmd->add_option("--rate", rate, "Fraction of sentences with entities")->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--length-weights", weights, "Comma-separated weights for span lengths 1..n");
  synth_cmd->add_option("--vocab", vocab_path, "Whitespace-separated token pool");
  synth_cmd->add_option("--category", category);
  synth_cmd->add_option("--seed", seed);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("symtag");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  const RenderOptions opts{parse_format(format), mark_top, digits};

  try {
    if (*validate_cmd) {
      const Corpus c = load_corpus(validate_in, in);
      const auto violations = validate(c);
      for (const auto& v : violations) {
        out << v.sentence_index << '\t' << v.token_index << '\t' << rule_id(v.rule) << '\n';
      }
      err << violations.size() << " violation(s) in " << c.size() << " sentence(s)\n";
      return strict && !violations.empty() ? kExitDataError : kExitOk;
    }

    if (*stats_cmd) {
      std::vector<NamedStats> rows;
      for (const auto& p : stats_in) rows.push_back({stem_of(p), corpus_stats(load_repaired(p, in, err))});
      out << render_stats(rows, opts);
      return kExitOk;
    }

    if (*perturb_cmd) {
      const Lexicon lex = load_lexicon(read_all(lexicon_path, in));
      if (lex.duplicates_dropped() > 0) {
        err << lexicon_path << ": dropped " << lex.duplicates_dropped() << " duplicate pair(s)\n";
      }
      const Corpus c = load_corpus(perturb_in, in);
      if (auto v = validate(c); !v.empty()) {
        throw DataError(perturb_in + ": " + std::to_string(v.size()) + " invalid I tag(s); repair before perturbing");
      }
      const auto direction =
          perturb_mode == "normalize" ? PerturbDirection::kNormalize : PerturbDirection::kDenormalize;
      const PerturbResult r = perturb(c, lex, direction, seed);
      write_all(perturb_out, serialize_corpus(r.corpus), out);
      if (!log_path.empty()) write_all(log_path, perturb_log_csv(r.log), out);
      err << perturb_mode << ": replaced " << r.log.n_spans_replaced() << " of " << r.log.n_spans_seen
          << " span(s)\n";
      return kExitOk;
    }

    if (*mix_cmd) {
      MixSpec spec;
      spec.seed = seed;
      if (mix_size != "auto") {
        try {
          std::size_t used = 0;
          const auto n = std::stoull(mix_size, &used);
          if (used != mix_size.size()) throw std::invalid_argument(mix_size);
          spec.target_size = static_cast<std::size_t>(n);
        } catch (const std::exception&) {
          throw ArgumentError("--size must be a number or 'auto'");
        }
      }
      const Corpus a = load_corpus(mix_a, in);
      const Corpus b = load_corpus(mix_b, in);
      const Corpus m = mix(a, b, spec);
      write_all(mix_out, serialize_corpus(m), out);
      err << "mix: " << m.size() << " sentence(s)\n";
      return kExitOk;
    }

    if (*eval_cmd) {
      const Corpus gold = load_repaired(gold_path, in, err);
      const Corpus pred = load_repaired(pred_path, in, err);
      const EvalResult r = score_corpus(gold, pred);
      out << render_eval(r, match != "partial", match != "exact", opts);
      if (by_length) {
        out << '\n';
        const std::vector<NamedLengthTable> rows = {{stem_of(pred_path), tp_by_length(gold, pred)}};
        out << render_length_table(rows, opts);
      }
      const MatchMode term_mode = match == "partial" ? MatchMode::kPartial : MatchMode::kExact;
      if (!fp_out.empty() || !fn_out.empty()) {
        const ErrorTerms terms = error_terms(gold, pred, term_mode);
        if (!fp_out.empty()) write_all(fp_out, render_terms(terms.fp), out);
        if (!fn_out.empty()) write_all(fn_out, render_terms(terms.fn), out);
      }
      return kExitOk;
    }

    if (*rank_cmd) {
      const MetricGrid grid = load_grids(grid_paths, in);
      std::vector<TestGroup> groups;
      for (const auto& g : group_specs) groups.push_back(parse_group(g));
      out << render_score_table(rank_table(grid, groups), opts);
      return kExitOk;
    }

    if (*report_cmd) {
      if (report_grids.empty() == report_gold.empty()) {
        throw ArgumentError("report needs either --grid or --gold with --pred");
      }
      if (!report_grids.empty()) {
        out << render_metric_grid(load_grids(report_grids, in), opts);
        return kExitOk;
      }
      if (report_preds.empty()) throw ArgumentError("report --gold needs at least one --pred");
      const Corpus gold = load_repaired(report_gold, in, err);
      std::vector<NamedLengthTable> rows;
      std::string longest;
      for (const auto& p : report_preds) {
        const Corpus pred = load_repaired(p, in, err);
        rows.push_back({stem_of(p), tp_by_length(gold, pred)});
        const LongestCorrect lc = longest_correct(gold, pred);
        longest += stem_of(p) + '\t' + std::to_string(lc.length);
        for (const auto& s : lc.surfaces) longest += '\t' + s;
        longest += '\n';
      }
      out << render_length_table(rows, opts) << '\n' << longest;
      return kExitOk;
    }

    if (*synth_cmd) {
      SynthConfig cfg;
      cfg.n_sentences = n_sentences;
      cfg.entity_rate = rate;
      cfg.length_weights = parse_weights(weights);
      cfg.seed = seed;
      cfg.category = category;
      cfg.name = stem_of(synth_out);
      if (vocab_path.empty()) {
        cfg.vocab = kContextWords;
        cfg.entity_vocab = kEntityWords;
      } else {
        std::istringstream words(read_all(vocab_path, in));
        cfg.vocab.assign(std::istream_iterator<std::string>(words), std::istream_iterator<std::string>());
      }
      write_all(synth_out, serialize_corpus(synth_corpus(cfg)), out);
      return kExitOk;
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace symtag::cli
