// Command-line front door. Records are one JSON object per line.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "bgconj/bs12.hpp"
#include "bgconj/errors.hpp"
#include "bgconj/gersten.hpp"
#include "bgconj/gm.hpp"
#include "bgconj/harness.hpp"
#include "bgconj/oracle.hpp"
#include "bgconj/powersum.hpp"

using namespace bgconj;
using json = nlohmann::ordered_json;

namespace {

enum class Format { Records, Tsv };
Format g_format = Format::Records;

json big(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

void emit(const json& j) {
  if (g_format == Format::Records) {
    std::cout << j.dump() << '\n';
    return;
  }
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (!first) std::cout << '\t';
    first = false;
    std::cout << (v.is_string() ? v.get<std::string>() : v.dump());
  }
  std::cout << '\n';
}

void emit_header(const json& j) {
  if (g_format != Format::Tsv) return;
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (!first) std::cout << '\t';
    first = false;
    std::cout << k;
  }
  std::cout << '\n';
}

json conj_record(const ConjResult& r, const PowerWord& u, const PowerWord& v) {
  json j;
  j["u"] = u.str();
  j["v"] = v.str();
  j["verdict"] = verdict_name(r.verdict);
  j["gamma"] = r.cert ? json(r.cert->gamma.str()) : json(nullptr);
  j["method"] = r.cert ? json(method_name(r.cert->method)) : json(nullptr);
  j["verified"] = r.cert ? r.cert->verified : false;
  j["note"] = r.note;
  if (r.dmw_k) {
    j["dmw_k"] = big(*r.dmw_k);
    j["dmw_m"] = big(*r.dmw_m);
    j["dmw_q"] = big(*r.dmw_q);
  }
  return j;
}

json witness_record(const WitnessReport& r) {
  json j;
  j["group"] = r.group;
  j["m"] = r.m;
  j["n"] = big(r.n);
  j["u"] = r.u.str();
  j["v"] = r.v.str();
  j["gamma"] = r.gamma_desc;
  j["alpha"] = big(r.alpha);
  j["beta"] = r.beta_desc;
  j["length_upper"] = big(r.length_upper);
  j["formula_lower"] = big(r.formula_lower);
  j["formula_lower_exact"] = r.formula_lower_exact;
  j["naf_terms"] = big(r.naf_terms);
  j["naf_word_lower"] = big(r.naf_word_lower);
  j["naf_lower"] = big(r.naf_lower);
  j["verified"] = r.verified;
  j["symbolic"] = r.symbolic;
  j["oracle_cl"] = r.oracle_cl ? json(*r.oracle_cl) : json(nullptr);
  j["oracle_status"] = r.oracle_status;
  j["note"] = r.note;
  return j;
}

SearchBudget budget_from(int depth, long node_cap) {
  SearchBudget b;
  b.max_conjugator_length = depth;
  b.node_cap = node_cap;
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugacy and word problems in iterated Baumslag-Solitar groups and the Baumslag-Gersten group"};
  app.require_subcommand(1);
  std::string format = "records";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"records", "tsv"}));

  int m = 2;
  std::string w1, w2, ps;
  int depth = 6;
  long node_cap = 200000;

  auto* reduce = app.add_subcommand("reduce", "Britton-reduce a word in G_m");
  reduce->add_option("-m", m)->required();
  reduce->add_option("word", w1)->required();

  auto* rank_cmd = app.add_subcommand("rank", "Rank and rank-reducing conjugator in G_m");
  rank_cmd->add_option("-m", m)->required();
  rank_cmd->add_option("word", w1)->required();

  auto* conj = app.add_subcommand("conj", "Conjugacy in G_m with a verified conjugator");
  conj->add_option("-m", m)->required();
  conj->add_option("u", w1)->required();
  conj->add_option("v", w2)->required();
  conj->add_option("--budget", depth, "Maximum conjugator length for the fallback search");
  conj->add_option("--node-cap", node_cap);

  auto* eval = app.add_subcommand("eval-bs12", "Evaluate a word over s0, s1 in Z[1/2] x| Z");
  eval->add_option("word", w1)->required();

  auto* naf_cmd = app.add_subcommand("naf", "Non-adjacent form of a power sum");
  naf_cmd->add_option("k", ps)->required();

  int level = 0;
  auto* lenb = app.add_subcommand("lenbounds", "Lower and upper bounds on |s_i^k| in G_m");
  lenb->add_option("-m", m)->required();
  lenb->add_option("-i", level);
  lenb->add_option("k", ps)->required();

  auto* bg = app.add_subcommand("bg", "The Baumslag-Gersten group");
  bg->require_subcommand(1);
  auto* bg_reduce = bg->add_subcommand("reduce", "Britton reduction over t");
  bg_reduce->add_option("word", w1)->required();
  auto* bg_conj = bg->add_subcommand("conj", "Conjugacy in G");
  bg_conj->add_option("u", w1)->required();
  bg_conj->add_option("v", w2)->required();
  bg_conj->add_option("--budget", depth);
  bg_conj->add_option("--node-cap", node_cap);
  auto* bg_len = bg->add_subcommand("lenbounds", "Bounds on |s0^k| in G");
  bg_len->add_option("k", ps)->required();

  std::string group = "gm";
  auto* orc = app.add_subcommand("oracle", "Brute-force reference computations");
  orc->require_subcommand(1);
  auto* o_conj = orc->add_subcommand("conj", "Shortlex-first conjugator by exhaustive search");
  o_conj->add_option("--group", group)->check(CLI::IsMember({"gm", "bg"}));
  o_conj->add_option("-m", m);
  o_conj->add_option("u", w1)->required();
  o_conj->add_option("v", w2)->required();
  o_conj->add_option("--depth", depth);
  o_conj->add_option("--node-cap", node_cap);
  auto* o_len = orc->add_subcommand("len", "Exact word length by exhaustive search");
  o_len->add_option("--group", group)->check(CLI::IsMember({"gm", "bg"}));
  o_len->add_option("-m", m);
  o_len->add_option("word", w1)->required();
  o_len->add_option("--depth", depth);
  o_len->add_option("--node-cap", node_cap);
  std::string k_text;
  int max_exp = 20;
  auto* o_naf = orc->add_subcommand("naf", "Minimum number of signed powers of two summing to k");
  o_naf->add_option("k", k_text)->required();
  o_naf->add_option("--max-exp", max_exp);

  std::string n_text = "1";
  auto* wit = app.add_subcommand("witness", "Witness pair for the conjugator-length lower bounds");
  wit->add_option("--group", group)->check(CLI::IsMember({"gm", "bg"}));
  wit->add_option("-m", m);
  wit->add_option("-n", n_text)->required();

  int max_m = 3, max_n = 2;
  bool use_oracle = false;
  auto* table = app.add_subcommand("cltable", "Table of witness cells");
  table->add_option("--max-m", max_m);
  table->add_option("--max-n", max_n);
  table->add_flag("--oracle", use_oracle, "Add exact minimal conjugator lengths where feasible");
  table->add_option("--depth", depth);
  table->add_option("--node-cap", node_cap);

  CLI11_PARSE(app, argc, argv);
  g_format = format == "tsv" ? Format::Tsv : Format::Records;

  try {
    if (*reduce) {
      Tower g(m);
      PowerWord w = parse_power_word(w1);
      PowerWord r = britton_reduce(w, g);
      emit({{"input", w.str()}, {"reduced", r.str()}, {"identity", r.empty()}});
    } else if (*rank_cmd) {
      Tower g(m);
      RankResult r = rank(parse_power_word(w1), g);
      emit({{"rank", r.rank},
            {"reduced", r.reduced.str()},
            {"conjugator", r.conjugator.str()},
            {"verified", r.verified}});
    } else if (*conj) {
      PowerWord u = parse_power_word(w1), v = parse_power_word(w2);
      emit(conj_record(conj_gm(u, v, Tower(m), budget_from(depth, node_cap)), u, v));
    } else if (*eval) {
      std::cout << eval_word(parse_power_word(w1)).str() << '\n';
    } else if (*naf_cmd) {
      PowerSum k = PowerSum::parse(ps);
      emit({{"naf", naf(k).str()}, {"terms", big(min_term_count(k))}});
    } else if (*lenb) {
      auto [lo, hi] = length_bounds_power(level, PowerSum::parse(ps), Tower(m));
      emit({{"lower", big(lo)}, {"upper", big(hi)}});
    } else if (*bg_reduce) {
      PowerWord w = parse_power_word(w1);
      PowerWord r = britton_reduce_bg(w);
      emit({{"input", w.str()}, {"reduced", r.str()}, {"identity", word_problem_bg(w)}});
    } else if (*bg_conj) {
      PowerWord u = parse_power_word(w1), v = parse_power_word(w2);
      emit(conj_record(conj_bg(u, v, budget_from(depth, node_cap)), u, v));
    } else if (*bg_len) {
      PowerSum k = PowerSum::parse(ps);
      auto [lo, hi] = length_bounds_bg(k);
      emit({{"lower", big(lo)}, {"upper", big(hi)}, {"word", bg_power_word(k).str()}});
    } else if (*o_conj || *o_len) {
      Group g = group == "bg" ? Group::gersten() : Group::tower(m);
      SearchBudget b = budget_from(depth, node_cap);
      if (*o_conj) {
        SearchResult r = bounded_conjugator_search(parse_word(w1), parse_word(w2), g, b);
        const char* st = r.status == SearchStatus::Found      ? "found"
                         : r.status == SearchStatus::NotFound ? "not_found"
                                                              : "budget_exceeded";
        emit({{"status", st},
              {"gamma", r.status == SearchStatus::Found ? json(r.word.str()) : json(nullptr)},
              {"nodes", r.nodes}});
      } else {
        auto len = min_word_length(parse_word(w1), g, b);
        emit({{"length", len ? json(*len) : json(nullptr)}});
      }
    } else if (*o_naf) {
      emit({{"k", k_text}, {"terms", brute_min_signed_terms(BigInt(k_text), max_exp)}});
    } else if (*wit) {
      BigInt n(n_text);
      WitnessReport r = group == "bg" ? make_witness_bg(n) : make_witness_gm(m, n);
      json j = witness_record(r);
      emit_header(j);
      emit(j);
    } else if (*table) {
      TableOptions opt;
      opt.oracle = use_oracle;
      opt.oracle_depth = depth;
      opt.oracle_node_cap = node_cap;
      bool header = true;
      for (const WitnessReport& r : cl_table(max_m, max_n, opt)) {
        json j = witness_record(r);
        if (header) emit_header(j);
        header = false;
        emit(j);
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
