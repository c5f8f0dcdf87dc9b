#include "sawlab/serialize.hpp"

#include <cstdio>

namespace sawlab {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Json counts_to_json(const CountsTable& t) {
  Json j;
  j["group"] = t.group;
  j["n_max"] = t.n_max;
  Json c = Json::array();
  for (const mpz_class& x : t.c) c.push_back(x.get_str());
  j["c"] = std::move(c);
  if (t.has_bridge_data) {
    Json b = Json::array(), h = Json::array();
    for (const mpz_class& x : t.b) b.push_back(x.get_str());
    for (const mpz_class& x : t.h) h.push_back(x.get_str());
    j["b"] = std::move(b);
    j["h"] = std::move(h);
    Json bs = Json::array(), hs = Json::array();
    for (const auto& row : t.b_by_span) {
      Json r = Json::array();
      for (const mpz_class& x : row) r.push_back(x.get_str());
      bs.push_back(std::move(r));
    }
    for (const auto& row : t.h_by_span) {
      Json r = Json::array();
      for (const mpz_class& x : row) r.push_back(x.get_str());
      hs.push_back(std::move(r));
    }
    j["b_by_span"] = std::move(bs);
    j["h_by_span"] = std::move(hs);
  }
  return j;
}

std::string counts_to_csv(const CountsTable& t) {
  std::string out = "n,c_n,b_n,h_n\n";
  for (int n = 1; n <= t.n_max; ++n) {
    out += std::to_string(n);
    out += ',';
    out += t.c[static_cast<std::size_t>(n)].get_str();
    out += ',';
    if (t.has_bridge_data) out += t.b[static_cast<std::size_t>(n)].get_str();
    out += ',';
    if (t.has_bridge_data) out += t.h[static_cast<std::size_t>(n)].get_str();
    out += '\n';
  }
  return out;
}

Json report_to_json(const VerifyReport& report) {
  Json j;
  j["title"] = report.title;
  Json checks = Json::array();
  for (const CheckLine& line : report.checks) {
    Json c;
    c["name"] = line.name;
    c["N"] = line.n;
    c["lhs"] = line.lhs;
    c["rhs"] = line.rhs;
    c["verdict"] = line.pass;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  if (!report.summary.empty()) {
    Json s;
    for (const auto& [k, v] : report.summary) s[k] = v;
    j["summary"] = std::move(s);
  }
  j["all_pass"] = report.all_pass();
  return j;
}

Json fingerprint_to_json(const Fingerprint& f, std::span<const std::string> names) {
  Json j;
  j["d"] = f.generator_count;
  j["L"] = f.cutoff;
  Json words = Json::array();
  for (const Word& w : f.identity_words) words.push_back(render_word(w, names));
  j["words"] = std::move(words);
  return j;
}

Json girth_to_json(const GirthReport& g, std::span<const std::string> names) {
  Json j;
  if (g.value) {
    j["value"] = *g.value;
    j["witness"] = render_word(g.witness, names);
  } else {
    j["value"] = "above_cutoff";
    j["cutoff"] = g.cutoff;
  }
  return j;
}

Json classg_to_json(const ClassGReport& r) {
  Json j;
  j["verdict"] = r.pass ? "PASS" : "FAIL";
  j["cutoff"] = r.cutoff;
  j["identity_words_checked"] = r.identity_words_checked;
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    Json x;
    x["kind"] = w.kind;
    x["word"] = w.word;
    x["value"] = w.value;
    witnesses.push_back(std::move(x));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

Json bracket_to_json(const MuBracket& br) {
  Json j;
  j["group"] = br.group;
  j["n_max"] = br.n_max;
  j["lower"] = format_double(br.lower);
  j["lower_n"] = br.lower_n;
  j["lower_trivial"] = br.lower_is_trivial;
  j["upper"] = format_double(br.upper);
  j["upper_n"] = br.upper_n;
  return j;
}

namespace {

std::string girth_cell(const LocalityRow& row) {
  return row.rel_girth ? std::to_string(*row.rel_girth) : "above_cutoff";
}

}  // namespace

Json locality_to_json(const std::vector<LocalityRow>& rows) {
  Json arr = Json::array();
  for (const LocalityRow& row : rows) {
    Json j;
    j["m"] = row.m;
    if (row.rel_girth) {
      j["rel_girth"] = *row.rel_girth;
    } else {
      j["rel_girth"] = "above_cutoff";
      j["girth_cutoff"] = row.girth_cutoff;
    }
    j["eq_horizon"] = row.eq_horizon;
    j["lower_m"] = format_double(row.quotient_bracket.lower);
    j["upper_m"] = format_double(row.quotient_bracket.upper);
    j["lower_base"] = format_double(row.base_bracket.lower);
    j["upper_base"] = format_double(row.base_bracket.upper);
    arr.push_back(std::move(j));
  }
  Json j;
  j["rows"] = std::move(arr);
  return j;
}

std::string locality_to_csv(const std::vector<LocalityRow>& rows) {
  std::string out = "m,rel_girth,eq_horizon,lower_m,upper_m,lower_base,upper_base\n";
  for (const LocalityRow& row : rows) {
    out += std::to_string(row.m);
    out += ',';
    out += girth_cell(row);
    out += ',';
    out += std::to_string(row.eq_horizon);
    out += ',';
    out += format_double(row.quotient_bracket.lower);
    out += ',';
    out += format_double(row.quotient_bracket.upper);
    out += ',';
    out += format_double(row.base_bracket.lower);
    out += ',';
    out += format_double(row.base_bracket.upper);
    out += '\n';
  }
  return out;
}

}  // namespace sawlab
