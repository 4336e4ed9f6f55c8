#include "ontoforge/eval.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace ontoforge {

PatternTerm PatternTerm::parse(const std::string& s) {
    PatternTerm t;
    if (!s.empty() && s[0] == '?') {
        t.kind = Kind::variable;
        t.var = s.substr(1);
        if (t.var.empty()) throw QueryError("empty variable name in pattern");
    } else if (s.size() >= 2 && s.front() == '<' && s.back() == '>') {
        t.kind = Kind::iri;
        t.iri = Iri(s.substr(1, s.size() - 2));
    } else if (s == "a") {
        t.kind = Kind::iri;
        t.iri = rdf_ns::type;
    } else {
        t.kind = Kind::literal;
        t.literal = s;
    }
    return t;
}

std::string PatternTerm::to_string() const {
    switch (kind) {
        case Kind::variable: return "?" + var;
        case Kind::iri: return "<" + iri.value + ">";
        default: return literal;
    }
}

namespace {

TriplePattern pattern_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw QueryError("a triple pattern must be an array of three terms");
    return TriplePattern{PatternTerm::parse(j.at(0).get<std::string>()),
                         PatternTerm::parse(j.at(1).get<std::string>()),
                         PatternTerm::parse(j.at(2).get<std::string>())};
}

Json pattern_to_json(const TriplePattern& p) {
    return Json::array({p.subject.to_string(), p.predicate.to_string(), p.object.to_string()});
}

SlotKind slot_kind_from_string(const std::string& s) {
    if (s == "string") return SlotKind::string_;
    if (s == "number") return SlotKind::number;
    if (s == "integer") return SlotKind::integer;
    throw QueryError("unknown slot kind: " + s);
}

std::string to_string(SlotKind k) {
    switch (k) {
        case SlotKind::string_: return "string";
        case SlotKind::number: return "number";
        default: return "integer";
    }
}

SlotNormalize slot_normalize_from_string(const std::string& s) {
    if (s == "none") return SlotNormalize::none;
    if (s == "casefold") return SlotNormalize::casefold;
    if (s == "unitlabel") return SlotNormalize::unitlabel;
    throw QueryError("unknown slot normalize: " + s);
}

std::string to_string(SlotNormalize n) {
    switch (n) {
        case SlotNormalize::none: return "none";
        case SlotNormalize::casefold: return "casefold";
        default: return "unitlabel";
    }
}

}  // namespace

Json RecordSchema::to_json() const {
    Json slots_json = Json::array();
    for (const auto& s : slots)
        slots_json.push_back(Json{{"name", s.name},
                                  {"kind", to_string(s.kind)},
                                  {"normalize", to_string(s.normalize)},
                                  {"variable", s.variable}});
    Json patterns = Json::array();
    for (const auto& p : query.patterns) patterns.push_back(pattern_to_json(p));
    Json optionals = Json::array();
    for (const auto& p : query.optionals) optionals.push_back(pattern_to_json(p));
    Json units = Json::object();
    for (const auto& [from, to] : unit_labels) units[from] = to;
    return Json{{"category", category},
                {"slots", slots_json},
                {"query", Json{{"group_by", query.group_by},
                               {"patterns", patterns},
                               {"optionals", optionals}}},
                {"unit_labels", units}};
}

RecordSchema RecordSchema::from_json(const Json& j) {
    RecordSchema schema;
    schema.category = j.at("category").get<std::string>();
    std::set<std::string> seen;
    for (const auto& s : j.at("slots")) {
        SlotSpec spec;
        spec.name = s.at("name").get<std::string>();
        spec.kind = slot_kind_from_string(s.value("kind", "string"));
        spec.normalize = slot_normalize_from_string(s.value("normalize", "none"));
        spec.variable = s.at("variable").get<std::string>();
        if (!seen.insert(spec.name).second)
            throw QueryError("duplicate slot name: " + spec.name);
        schema.slots.push_back(std::move(spec));
    }
    const Json& q = j.at("query");
    schema.query.group_by = q.at("group_by").get<std::string>();
    for (const auto& p : q.at("patterns")) schema.query.patterns.push_back(pattern_from_json(p));
    if (q.contains("optionals"))
        for (const auto& p : q.at("optionals"))
            schema.query.optionals.push_back(pattern_from_json(p));
    if (j.contains("unit_labels"))
        for (const auto& [from, to] : j.at("unit_labels").items())
            schema.unit_labels[from] = to.get<std::string>();

    std::set<std::string> bound;
    auto collect = [&bound](const TriplePattern& p) {
        for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object})
            if (t->kind == PatternTerm::Kind::variable) bound.insert(t->var);
    };
    for (const auto& p : schema.query.patterns) collect(p);
    bool group_in_patterns = bound.count(schema.query.group_by) > 0;
    for (const auto& p : schema.query.optionals) collect(p);
    if (!group_in_patterns)
        throw QueryError("group_by variable not bound by required patterns: " +
                         schema.query.group_by);
    for (const auto& s : schema.slots)
        if (!bound.count(s.variable))
            throw QueryError("slot variable never bound: " + s.variable);
    return schema;
}

namespace {

using Bindings = std::map<std::string, Term>;

bool term_matches(const PatternTerm& p, const Term& t, Bindings& bindings) {
    switch (p.kind) {
        case PatternTerm::Kind::iri: {
            const auto* iri = std::get_if<Iri>(&t);
            return iri && *iri == p.iri;
        }
        case PatternTerm::Kind::literal: {
            const auto* lit = std::get_if<Literal>(&t);
            return lit && lit->lexical == p.literal;
        }
        case PatternTerm::Kind::variable: {
            auto it = bindings.find(p.var);
            if (it != bindings.end()) return !(it->second < t) && !(t < it->second);
            bindings[p.var] = t;
            return true;
        }
    }
    return false;
}

bool pattern_matches(const TriplePattern& p, const Triple& t, Bindings& bindings) {
    Bindings saved = bindings;
    if (term_matches(p.subject, t.subject, bindings) &&
        term_matches(p.predicate, t.predicate, bindings) &&
        term_matches(p.object, t.object, bindings))
        return true;
    bindings = saved;
    return false;
}

// Deterministic join order: triples sorted by their canonical keys.
std::vector<Triple> sorted_triples(const Graph& g) {
    std::vector<Triple> out = g.triples();
    std::sort(out.begin(), out.end());
    return out;
}

void join(const std::vector<Triple>& triples, const std::vector<TriplePattern>& patterns,
          size_t at, Bindings& bindings, std::vector<Bindings>& out) {
    if (at == patterns.size()) {
        out.push_back(bindings);
        return;
    }
    for (const auto& t : triples) {
        Bindings saved = bindings;
        if (pattern_matches(patterns[at], t, bindings)) {
            join(triples, patterns, at + 1, bindings, out);
            bindings = saved;
        }
    }
}

std::string term_value(const Term& t) {
    if (const auto* lit = std::get_if<Literal>(&t)) return lit->lexical;
    if (const auto* iri = std::get_if<Iri>(&t)) return iri->value;
    return std::get<BlankNode>(t).id;
}

}  // namespace

std::vector<Record> project_records(const Graph& graph, const RecordSchema& schema) {
    const auto triples = sorted_triples(graph);

    Bindings empty;
    std::vector<Bindings> solutions;
    join(triples, schema.query.patterns, 0, empty, solutions);

    // One record per group_by binding; the first solution in join order wins.
    std::map<std::string, Bindings> by_group;
    for (const auto& sol : solutions) {
        const std::string key = term_key(sol.at(schema.query.group_by));
        by_group.emplace(key, sol);
    }

    std::vector<Record> records;
    for (auto& [key, bindings] : by_group) {
        for (const auto& opt : schema.query.optionals) {
            for (const auto& t : triples) {
                Bindings attempt = bindings;
                if (pattern_matches(opt, t, attempt)) {
                    bindings = std::move(attempt);
                    break;
                }
            }
        }
        Record record;
        for (const auto& slot : schema.slots) {
            auto it = bindings.find(slot.variable);
            if (it != bindings.end()) record[slot.name] = term_value(it->second);
        }
        records.push_back(std::move(record));
    }
    return records;
}

Json records_to_json(const std::vector<Record>& records) {
    Json out = Json::array();
    for (const auto& r : records) {
        Json obj = Json::object();
        for (const auto& [slot, value] : r) obj[slot] = value;
        out.push_back(std::move(obj));
    }
    return out;
}

std::vector<Record> records_from_json(const Json& j) {
    std::vector<Record> out;
    for (const auto& obj : j) {
        Record r;
        for (const auto& [slot, value] : obj.items())
            r[slot] = value.is_string() ? value.get<std::string>() : value.dump();
        out.push_back(std::move(r));
    }
    return out;
}

Counts& Counts::operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string normalize_slot(const SlotSpec& spec, const std::string& raw,
                           const std::map<std::string, std::string>& unit_labels) {
    std::string v = trim(raw);
    if (spec.normalize == SlotNormalize::casefold) {
        for (char& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (spec.normalize == SlotNormalize::unitlabel) {
        auto it = unit_labels.find(v);
        if (it != unit_labels.end()) v = it->second;
    }
    if (v.empty()) return v;
    if (spec.kind == SlotKind::integer || spec.kind == SlotKind::number) {
        try {
            size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos == v.size()) {
                std::ostringstream os;
                os.precision(12);
                os << d;
                return os.str();
            }
        } catch (const std::exception&) {
        }
    }
    return v;
}

Record normalize_record(const Record& r, const RecordSchema& schema) {
    Record out;
    for (const auto& slot : schema.slots) {
        auto it = r.find(slot.name);
        if (it == r.end()) continue;
        std::string v = normalize_slot(slot, it->second, schema.unit_labels);
        if (!v.empty()) out[slot.name] = std::move(v);
    }
    return out;
}

std::string record_key(const Record& r) {
    std::string key;
    for (const auto& [slot, value] : r) key += slot + "\x1f" + value + "\x1e";
    return key;
}

long matched_slots(const Record& a, const Record& b) {
    long n = 0;
    for (const auto& [slot, value] : a) {
        auto it = b.find(slot);
        if (it != b.end() && it->second == value) ++n;
    }
    return n;
}

}  // namespace

std::vector<int> hungarian_assignment(const std::vector<std::vector<long>>& weight) {
    const size_t rows = weight.size();
    size_t cols = 0;
    for (const auto& row : weight) cols = std::max(cols, row.size());
    const size_t n = std::max(rows, cols);
    if (n == 0) return {};

    // Minimization form on the padded square matrix of negated weights.
    long max_w = 0;
    for (const auto& row : weight)
        for (long w : row) max_w = std::max(max_w, w);
    std::vector<std::vector<long>> cost(n + 1, std::vector<long>(n + 1, max_w));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < weight[i].size(); ++j) cost[i + 1][j + 1] = max_w - weight[i][j];

    const long inf = std::numeric_limits<long>::max();
    std::vector<long> u(n + 1, 0), v(n + 1, 0);
    std::vector<size_t> p(n + 1, 0), way(n + 1, 0);
    for (size_t i = 1; i <= n; ++i) {
        p[0] = i;
        size_t j0 = 0;
        std::vector<long> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            size_t i0 = p[j0], j1 = 0;
            long delta = inf;
            for (size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                long cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> assignment(rows, -1);
    for (size_t j = 1; j <= n; ++j) {
        size_t i = p[j];
        if (i >= 1 && i <= rows && j <= cols && i - 1 < weight.size() &&
            j - 1 < weight[i - 1].size())
            assignment[i - 1] = static_cast<int>(j - 1);
    }
    return assignment;
}

MatchResult match_records(const std::vector<Record>& predicted,
                          const std::vector<Record>& gold, const RecordSchema& schema) {
    std::vector<Record> pred, gd;
    for (const auto& r : predicted) pred.push_back(normalize_record(r, schema));
    for (const auto& r : gold) gd.push_back(normalize_record(r, schema));
    auto by_key = [](const Record& a, const Record& b) { return record_key(a) < record_key(b); };
    std::sort(pred.begin(), pred.end(), by_key);
    std::sort(gd.begin(), gd.end(), by_key);

    std::vector<std::vector<long>> weight(pred.size(), std::vector<long>(gd.size(), 0));
    for (size_t i = 0; i < pred.size(); ++i)
        for (size_t j = 0; j < gd.size(); ++j) weight[i][j] = matched_slots(pred[i], gd[j]);
    std::vector<int> assignment = hungarian_assignment(weight);

    MatchResult result;
    for (const auto& slot : schema.slots) result.per_slot[slot.name];

    std::vector<bool> gold_used(gd.size(), false);
    for (size_t i = 0; i < pred.size(); ++i) {
        int j = assignment.empty() ? -1 : assignment[i];
        if (j >= 0) gold_used[j] = true;
        for (const auto& slot : schema.slots) {
            auto pit = pred[i].find(slot.name);
            const bool p_has = pit != pred[i].end();
            bool g_has = false;
            std::string g_val;
            if (j >= 0) {
                auto git = gd[j].find(slot.name);
                g_has = git != gd[j].end();
                if (g_has) g_val = git->second;
            }
            Counts& sc = result.per_slot[slot.name];
            if (p_has && g_has && pit->second == g_val) {
                ++sc.tp;
            } else {
                if (p_has) ++sc.fp;
                if (g_has) ++sc.fn;
            }
        }
    }
    for (size_t j = 0; j < gd.size(); ++j) {
        if (gold_used[j]) continue;
        for (const auto& [slot, value] : gd[j]) ++result.per_slot[slot].fn;
    }

    for (const auto& [slot, counts] : result.per_slot) result.counts += counts;
    return result;
}

Metrics score(const Counts& counts) {
    Metrics m;
    m.precision = counts.tp + counts.fp == 0
                      ? 1.0
                      : static_cast<double>(counts.tp) / (counts.tp + counts.fp);
    m.recall = counts.tp + counts.fn == 0
                   ? 1.0
                   : static_cast<double>(counts.tp) / (counts.tp + counts.fn);
    m.f1 = m.precision + m.recall == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

std::pair<Metrics, Metrics> aggregate(const std::map<std::string, Counts>& per_category) {
    Counts total;
    Metrics macro;
    for (const auto& [category, counts] : per_category) {
        total += counts;
        Metrics m = score(counts);
        macro.precision += m.precision;
        macro.recall += m.recall;
        macro.f1 += m.f1;
    }
    if (!per_category.empty()) {
        macro.precision /= per_category.size();
        macro.recall /= per_category.size();
        macro.f1 /= per_category.size();
    }
    return {score(total), macro};
}

Json error_anatomy(const std::map<std::string, Counts>& per_slot,
                   const std::map<std::string, Counts>& per_paper) {
    // Slot ranking by total error mass.
    std::vector<std::pair<std::string, Counts>> ranked(per_slot.begin(), per_slot.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        long ea = a.second.fp + a.second.fn, eb = b.second.fp + b.second.fn;
        if (ea != eb) return ea > eb;
        return a.first < b.first;
    });
    Json slots = Json::array();
    for (const auto& [name, c] : ranked)
        slots.push_back(Json{{"slot", name}, {"fp", c.fp}, {"fn", c.fn}, {"errors", c.fp + c.fn}});

    // Lorenz-style concentration over papers: shares sorted descending with
    // cumulative curve points.
    std::vector<std::pair<std::string, long>> paper_errors;
    long total_errors = 0;
    for (const auto& [doi, c] : per_paper) {
        paper_errors.emplace_back(doi, c.fp + c.fn);
        total_errors += c.fp + c.fn;
    }
    std::sort(paper_errors.begin(), paper_errors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    Json lorenz = Json::array();
    long running = 0;
    for (size_t i = 0; i < paper_errors.size(); ++i) {
        running += paper_errors[i].second;
        double share = total_errors == 0
                           ? 0.0
                           : static_cast<double>(paper_errors[i].second) / total_errors;
        double cumulative = total_errors == 0
                                ? 0.0
                                : static_cast<double>(running) / total_errors;
        lorenz.push_back(Json{{"paper", paper_errors[i].first},
                              {"share", share},
                              {"cumulative", cumulative},
                              {"fraction_of_papers",
                               static_cast<double>(i + 1) / paper_errors.size()}});
    }

    // Pareto projection: fix the top-N slots' errors and rescore.
    Json pareto = Json::array();
    for (size_t n = 1; n <= ranked.size(); ++n) {
        Counts projected;
        for (size_t i = 0; i < ranked.size(); ++i) {
            Counts c = ranked[i].second;
            if (i < n) {
                c.tp += std::max(c.fp, c.fn);
                c.fp = 0;
                c.fn = 0;
            }
            projected += c;
        }
        pareto.push_back(Json{{"top_slots", n}, {"f1", score(projected).f1}});
    }

    return Json{{"slots", slots}, {"lorenz", lorenz}, {"pareto", pareto}};
}

}  // namespace ontoforge
