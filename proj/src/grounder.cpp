#include "ontoforge/grounder.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <httplib.h>

#include "ontoforge/turtle.hpp"

namespace ontoforge {

namespace {

const char* kSurroundingPunct = ".,;:!?\"'()[]{}";

// UTF-8 sequences of unicode dash codepoints folded to '-'.
const char* kDashes[] = {
    "\xE2\x80\x90",  // hyphen
    "\xE2\x80\x91",  // non-breaking hyphen
    "\xE2\x80\x92",  // figure dash
    "\xE2\x80\x93",  // en dash
    "\xE2\x80\x94",  // em dash
    "\xE2\x80\x95",  // horizontal bar
    "\xE2\x88\x92",  // minus sign
};

}  // namespace

std::string ground_normalize(const std::string& s) {
    std::string unified = s;
    for (const char* dash : kDashes) {
        size_t pos;
        while ((pos = unified.find(dash)) != std::string::npos) unified.replace(pos, 3, "-");
    }
    std::string collapsed;
    bool pending_space = false;
    for (char c : unified) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!collapsed.empty()) pending_space = true;
        } else {
            if (pending_space) collapsed += ' ';
            pending_space = false;
            collapsed += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    size_t begin = collapsed.find_first_not_of(kSurroundingPunct);
    if (begin == std::string::npos) return "";
    size_t end = collapsed.find_last_not_of(kSurroundingPunct);
    std::string out = collapsed.substr(begin, end - begin + 1);
    // Stripping punctuation can expose fresh edge whitespace.
    size_t b2 = out.find_first_not_of(' ');
    size_t e2 = out.find_last_not_of(' ');
    if (b2 == std::string::npos) return "";
    return out.substr(b2, e2 - b2 + 1);
}

size_t levenshtein(const std::string& a, const std::string& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<size_t> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= m; ++j) {
            size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

GroundingMode parse_mode(const std::string& s) {
    if (s == "rewrite") return GroundingMode::rewrite;
    if (s == "sameas") return GroundingMode::sameas;
    throw ModeError("unknown grounding mode: " + s);
}

Json LabelIndex::to_json() const {
    Json entries_json = Json::array();
    for (const auto& e : entries) {
        entries_json.push_back(Json{{"target_iri", e.target_iri.value},
                                    {"class", e.cls.value},
                                    {"label_raw", e.label_raw},
                                    {"label_norm", e.label_norm},
                                    {"predicate", e.predicate.value}});
    }
    return Json{{"source_fingerprint", source_fingerprint}, {"entries", entries_json}};
}

LabelIndex LabelIndex::from_json(const Json& j) {
    LabelIndex index;
    index.source_fingerprint = j.at("source_fingerprint").get<std::string>();
    for (const auto& e : j.at("entries")) {
        index.entries.push_back(IndexEntry{Iri(e.at("target_iri").get<std::string>()),
                                           Iri(e.at("class").get<std::string>()),
                                           e.at("label_raw").get<std::string>(),
                                           e.at("label_norm").get<std::string>(),
                                           Iri(e.at("predicate").get<std::string>())});
    }
    return index;
}

Json GroundingMap::to_json() const {
    Json out = Json::array();
    for (const auto& p : pairs) {
        out.push_back(Json{{"local_iri", p.local_iri.value},
                           {"target_iri", p.target_iri.value},
                           {"score", p.score},
                           {"mode", p.mode == GroundingMode::rewrite ? "rewrite" : "sameas"}});
    }
    return out;
}

namespace {

std::vector<Iri> class_instances(const Graph& g, const std::set<Iri>& classes) {
    std::set<Iri> out;
    for (const auto& cls : classes) {
        for (const auto& s : g.subjects_of(rdf_ns::type, Term{cls}))
            if (const auto* iri = std::get_if<Iri>(&s)) out.insert(*iri);
    }
    return {out.begin(), out.end()};
}

bool string_literal(const Term& t) {
    const auto* lit = std::get_if<Literal>(&t);
    return lit && (lit->datatype == xsd::string_ || lit->datatype == xsd::lang_string);
}

void sort_entries(std::vector<IndexEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const IndexEntry& a, const IndexEntry& b) {
        return std::tie(a.label_norm, a.target_iri, a.predicate.value, a.label_raw) <
               std::tie(b.label_norm, b.target_iri, b.predicate.value, b.label_raw);
    });
}

}  // namespace

std::vector<std::pair<Iri, double>> discover_label_predicates(const Graph& reference,
                                                              const std::set<Iri>& classes) {
    auto instances = class_instances(reference, classes);
    if (instances.empty()) return {};

    std::map<Iri, std::set<Iri>> covered;  // predicate -> instances with a string value
    for (const auto& inst : instances) {
        for (const auto& t : reference.with_subject(Term{inst})) {
            if (!string_literal(t.object)) continue;
            const auto& pred = std::get<Iri>(t.predicate);
            covered[pred].insert(inst);
        }
    }

    std::vector<std::pair<Iri, double>> out;
    for (const auto& [pred, insts] : covered)
        out.emplace_back(pred, static_cast<double>(insts.size()) /
                                   static_cast<double>(instances.size()));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first == rdfs_ns::label) return true;
        if (b.first == rdfs_ns::label) return false;
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

LabelIndex build_label_index(const Graph& reference, const std::set<Iri>& classes,
                             const std::vector<Iri>& predicates) {
    LabelIndex index;
    index.source_fingerprint = fingerprint(serialize_turtle(reference));
    for (const auto& inst : class_instances(reference, classes)) {
        Iri cls;
        for (const auto& t : reference.types_of(Term{inst})) {
            if (classes.count(t) && (cls.value.empty() || t < cls)) cls = t;
        }
        for (const auto& pred : predicates) {
            for (const auto& o : reference.objects_of(Term{inst}, pred)) {
                if (!string_literal(o)) continue;
                const auto& lit = std::get<Literal>(o);
                index.entries.push_back(
                    IndexEntry{inst, cls, lit.lexical, ground_normalize(lit.lexical), pred});
            }
        }
    }
    sort_entries(index.entries);
    return index;
}

std::vector<Candidate> lookup(const LabelIndex& index, const std::string& surface, size_t k,
                              double tau) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const std::string norm = ground_normalize(surface);

    std::map<Iri, Candidate> best;
    for (const auto& entry : index.entries) {
        size_t len = std::max(norm.size(), entry.label_norm.size());
        double score = len == 0 ? 1.0
                                : 1.0 - static_cast<double>(levenshtein(norm, entry.label_norm)) /
                                            static_cast<double>(len);
        if (score < tau) continue;
        auto it = best.find(entry.target_iri);
        if (it == best.end() || score > it->second.score)
            best[entry.target_iri] = Candidate{entry.target_iri, score, entry.label_raw};
    }

    std::vector<Candidate> out;
    for (const auto& [iri, cand] : best) out.push_back(cand);
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.target_iri < b.target_iri;
    });
    if (out.size() > k) out.resize(k);
    return out;
}

std::pair<Graph, GroundingMap> ground_graph(const Graph& graph, const LabelIndex& index,
                                            const std::set<Iri>& classes, GroundingMode mode,
                                            double tau,
                                            const std::vector<Iri>& label_predicates) {
    GroundingMap map;
    std::map<Iri, Iri> substitution;

    for (const auto& inst : class_instances(graph, classes)) {
        std::optional<Candidate> best;
        for (const auto& pred : label_predicates) {
            for (const auto& o : graph.objects_of(Term{inst}, pred)) {
                const auto* lit = std::get_if<Literal>(&o);
                if (!lit) continue;
                for (const auto& cand : lookup(index, lit->lexical, index.entries.size() + 1,
                                               tau)) {
                    if (!best || cand.score > best->score ||
                        (cand.score == best->score && cand.target_iri < best->target_iri))
                        best = cand;
                }
            }
        }
        if (!best) continue;
        map.pairs.push_back(GroundingPair{inst, best->target_iri, best->score, mode});
        substitution[inst] = best->target_iri;
    }

    Graph out;
    for (const auto& [name, ns] : graph.prefixes()) out.set_prefix(name, ns);
    if (mode == GroundingMode::sameas) {
        for (const auto& t : graph.triples()) out.add(t);
        for (const auto& p : map.pairs)
            out.add(Triple{p.local_iri, Term{owl_ns::same_as}, p.target_iri});
    } else {
        auto substitute = [&substitution](const Term& t) -> Term {
            if (const auto* iri = std::get_if<Iri>(&t)) {
                auto it = substitution.find(*iri);
                if (it != substitution.end()) return it->second;
            }
            return t;
        };
        for (const auto& t : graph.triples())
            out.add(Triple{substitute(t.subject), t.predicate, substitute(t.object)});
    }
    return {std::move(out), std::move(map)};
}

namespace {

std::string url_encode(const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            char buf[4];
            std::snprintf(buf, sizeof buf, "%%%02X", c);
            out += buf;
        }
    }
    return out;
}

}  // namespace

LabelIndex fetch_labels_from_endpoint(const std::string& endpoint_url,
                                      const std::set<Iri>& classes,
                                      const std::vector<Iri>& predicates) {
    // Split scheme://host[:port]/path
    auto scheme_end = endpoint_url.find("://");
    if (scheme_end == std::string::npos) throw NetworkError("malformed endpoint URL");
    auto path_start = endpoint_url.find('/', scheme_end + 3);
    std::string host_port = endpoint_url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : endpoint_url.substr(path_start);

    httplib::Client client(host_port);
    client.set_connection_timeout(10);

    LabelIndex index;
    std::string fingerprint_input;
    for (const auto& cls : classes) {
        for (const auto& pred : predicates) {
            const std::string query = "SELECT ?instance ?label WHERE { ?instance "
                                      "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <" +
                                      cls.value + "> . ?instance <" + pred.value +
                                      "> ?label . }";
            auto res = client.Post(path, "query=" + url_encode(query),
                                   "application/x-www-form-urlencoded");
            if (!res) throw NetworkError("endpoint unreachable: " + endpoint_url);
            if (res->status != 200)
                throw NetworkError("endpoint returned HTTP " + std::to_string(res->status));
            Json body = Json::parse(res->body, nullptr, false);
            if (body.is_discarded() || !body.contains("results") ||
                !body.at("results").contains("bindings"))
                throw MalformedResultsError("response is not SPARQL JSON results");
            for (const auto& binding : body.at("results").at("bindings")) {
                if (!binding.contains("instance") || !binding.contains("label"))
                    throw MalformedResultsError("binding missing required variable");
                const std::string inst = binding.at("instance").at("value").get<std::string>();
                const std::string label = binding.at("label").at("value").get<std::string>();
                index.entries.push_back(
                    IndexEntry{Iri(inst), cls, label, ground_normalize(label), pred});
                fingerprint_input += inst + "\x1f" + label + "\n";
            }
        }
    }
    sort_entries(index.entries);
    index.source_fingerprint = fingerprint(fingerprint_input);
    return index;
}

}  // namespace ontoforge
