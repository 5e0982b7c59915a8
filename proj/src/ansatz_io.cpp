// Copyright 2026 The modpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modpack/ansatz_io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "modpack/util.hpp"

namespace modpack {

namespace {

using json = nlohmann::json;

constexpr const char* kJsonFormatTag = "modpack-ansatz";

struct PendingTerm {
  ExcitationTerm term;
  bool has_id = false;
  std::size_t line = 0;
};

Ansatz finish(std::optional<int> header_orbitals, std::vector<PendingTerm> pending,
              Ansatz::Metadata meta) {
  int n = header_orbitals.value_or(0);
  if (!header_orbitals) {
    for (const auto& p : pending) n = std::max(n, p.term.row_hi() + 1);
    if (n == 0) throw ParseError(0, "no 'orbitals' header and no terms");
  }
  std::set<int> ids;
  for (auto& p : pending) {
    if (!p.has_id) p.term.id = static_cast<int>(&p - pending.data());
  }
  std::vector<ExcitationTerm> terms;
  terms.reserve(pending.size());
  for (const auto& p : pending) {
    try {
      validate_term(p.term, n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(p.line, e.what());
    }
    if (!ids.insert(p.term.id).second) {
      throw ParseError(p.line, "duplicate term id " + std::to_string(p.term.id));
    }
    terms.push_back(p.term);
  }
  return Ansatz(n, std::move(terms), std::move(meta));
}

Ansatz parse_text(std::string_view source) {
  std::optional<int> orbitals;
  Ansatz::Metadata meta;
  std::vector<PendingTerm> pending;

  std::size_t line_no = 0;
  for (auto raw : split(source, '\n')) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    const auto head = tok[0];
    try {
      if (head == "orbitals") {
        if (tok.size() != 2) throw ParseError(line_no, "expected 'orbitals <n>'");
        if (orbitals) throw ParseError(line_no, "repeated 'orbitals' header");
        if (!pending.empty()) {
          throw ParseError(line_no, "'orbitals' header must precede terms");
        }
        const auto n = parse_int(tok[1]);
        if (n < 1) throw ParseError(line_no, "orbitals must be >= 1");
        orbitals = static_cast<int>(n);
      } else if (head == "meta") {
        if (tok.size() < 3) throw ParseError(line_no, "expected 'meta <key> <value>'");
        auto rest = trim(raw.substr(static_cast<std::size_t>(tok[1].data() - raw.data()) +
                                     tok[1].size()));
        meta[std::string(tok[1])] = std::string(rest);
      } else if (head == "single" || head == "double") {
        const std::size_t arity = head == "single" ? 2 : 4;
        if (tok.size() < 1 + arity) {
          throw ParseError(line_no, std::string(head) + " needs " +
                                        std::to_string(arity) + " indices");
        }
        PendingTerm p;
        p.line = line_no;
        p.term.kind = arity == 2 ? TermKind::Single : TermKind::Double;
        for (std::size_t i = 0; i < arity; ++i) {
          p.term.idx[i] = static_cast<int>(parse_int(tok[1 + i]));
        }
        bool has_amp = false, has_grad = false;
        for (std::size_t i = 1 + arity; i < tok.size(); ++i) {
          auto eq = tok[i].find('=');
          if (eq == std::string_view::npos) {
            throw ParseError(line_no, "field '" + std::string(tok[i]) +
                                          "' is not key=value");
          }
          auto key = tok[i].substr(0, eq);
          auto val = tok[i].substr(eq + 1);
          if (key == "amp") {
            p.term.amplitude = parse_double(val);
            has_amp = true;
          } else if (key == "grad") {
            p.term.gradient_magnitude = parse_double(val);
            has_grad = true;
          } else if (key == "id") {
            p.term.id = static_cast<int>(parse_int(val));
            p.has_id = true;
          } else {
            throw ParseError(line_no, "unknown field '" + std::string(key) + "'");
          }
        }
        if (!has_amp) throw ParseError(line_no, "missing field 'amp'");
        if (!has_grad) throw ParseError(line_no, "missing field 'grad'");
        pending.push_back(p);
      } else {
        throw ParseError(line_no, "unknown record '" + std::string(head) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return finish(orbitals, std::move(pending), std::move(meta));
}

Ansatz parse_json(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    const auto upto = source.substr(0, std::min(e.byte, source.size()));
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(upto.begin(), upto.end(), '\n'));
    throw ParseError(line, "invalid JSON");
  }
  try {
    if (!doc.is_object()) throw ParseError(0, "ansatz document must be an object");
    if (doc.contains("format") && doc.at("format") != kJsonFormatTag) {
      throw ParseError(0, "unexpected format tag");
    }
    std::optional<int> orbitals;
    if (doc.contains("orbitals")) orbitals = doc.at("orbitals").get<int>();
    if (orbitals && *orbitals < 1) throw ParseError(0, "orbitals must be >= 1");
    Ansatz::Metadata meta;
    if (doc.contains("meta")) {
      for (const auto& [k, v] : doc.at("meta").items()) {
        meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    std::vector<PendingTerm> pending;
    const auto& terms = doc.value("terms", json::array());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& jt = terms[i];
      const std::string where = "terms[" + std::to_string(i) + "]";
      PendingTerm p;
      const auto type = jt.at("type").get<std::string>();
      const auto ix = jt.at("indices").get<std::vector<int>>();
      if (type == "single") {
        if (ix.size() != 2) throw ParseError(0, where + ": single needs 2 indices");
        p.term.kind = TermKind::Single;
      } else if (type == "double") {
        if (ix.size() != 4) throw ParseError(0, where + ": double needs 4 indices");
        p.term.kind = TermKind::Double;
      } else {
        throw ParseError(0, where + ": unknown type '" + type + "'");
      }
      std::copy(ix.begin(), ix.end(), p.term.idx.begin());
      p.term.amplitude = jt.at("amp").get<double>();
      p.term.gradient_magnitude = jt.at("grad").get<double>();
      if (jt.contains("id")) {
        p.term.id = jt.at("id").get<int>();
        p.has_id = true;
      }
      pending.push_back(p);
    }
    return finish(orbitals, std::move(pending), std::move(meta));
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("malformed ansatz document: ") + e.what());
  }
}

void write_term_text(std::ostream& os, const ExcitationTerm& t) {
  os << (t.kind == TermKind::Single ? "single" : "double");
  for (int i : t.indices()) os << ' ' << i;
  os << " amp=" << format_double(t.amplitude)
     << " grad=" << format_double(t.gradient_magnitude) << " id=" << t.id << '\n';
}

}  // namespace

Ansatz parse_ansatz(std::string_view source, AnsatzFormat format) {
  if (format == AnsatzFormat::Auto) {
    auto body = trim(source);
    format = (!body.empty() && body.front() == '{') ? AnsatzFormat::Json
                                                    : AnsatzFormat::Text;
  }
  return format == AnsatzFormat::Json ? parse_json(source) : parse_text(source);
}

Ansatz load_ansatz(const std::filesystem::path& path, AnsatzFormat format) {
  return parse_ansatz(read_file(path), format);
}

std::string serialize_ansatz(const Ansatz& a, AnsatzFormat format) {
  if (format == AnsatzFormat::Json) {
    json doc;
    doc["format"] = kJsonFormatTag;
    doc["orbitals"] = a.n_orbitals();
    doc["meta"] = json::object();
    for (const auto& [k, v] : a.metadata()) doc["meta"][k] = v;
    doc["terms"] = json::array();
    for (const auto& t : a.terms()) {
      auto ix = t.indices();
      doc["terms"].push_back({{"id", t.id},
                              {"type", t.kind == TermKind::Single ? "single" : "double"},
                              {"indices", std::vector<int>(ix.begin(), ix.end())},
                              {"amp", t.amplitude},
                              {"grad", t.gradient_magnitude}});
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "orbitals " << a.n_orbitals() << '\n';
  for (const auto& [k, v] : a.metadata()) os << "meta " << k << ' ' << v << '\n';
  for (const auto& t : a.terms()) write_term_text(os, t);
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace modpack
