#include "gmc/model_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace gmc {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr Label kUnset = std::numeric_limits<Label>::max();

[[noreturn]] void ill(const std::string& msg) { throw Error(Errc::IllFormed, msg); }
[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::ParseError, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const std::string& what) {
  if (!j.is_string()) bad(what + " must be a string");
  return j.get<std::string>();
}

class Loader {
 public:
  Loader(const json& doc, FiniteGradedModel& m) : doc_(doc), m_(m) {}

  static FiniteGradedModel load(const json& doc) {
    if (str(field(doc, "format"), "format") != "gmcmodel/1") bad("unsupported format, expected gmcmodel/1");
    Pcm pcm = parse_pcm(str(field(doc, "pcm"), "pcm"));
    FiniteGradedModel m = FiniteGradedModel::blank(pcm, parse_objects(field(doc, "objects")));
    Loader(doc, m).run();
    return m;
  }

 private:
  void run() {
    parse_hom();
    size_tables();
    parse_id();
    parse_comp();
    parse_regrade();
    parse_tensor();
    parse_braiding();
    find_unset();
    validate(m_);
  }

  static Pcm parse_pcm(const std::string& d) {
    try {
      return Pcm::parse(d);
    } catch (const Error& e) {
      bad("bad pcm descriptor: " + std::string(e.what()));
    }
  }

  static ObjectMonoid parse_objects(const json& j) {
    ObjectMonoid o;
    const json& names = field(j, "names");
    if (!names.is_array()) bad("objects.names must be an array");
    for (const auto& n : names) o.names.push_back(str(n, "object name"));
    if (o.names.empty()) ill("the object monoid is empty");
    o.unit = o.index_of(str(field(j, "unit"), "objects.unit"));
    const std::size_t n = o.size();
    o.mult.assign(n * n, kUnset);
    const json& mult = field(j, "mult");
    if (!mult.is_array()) bad("objects.mult must be an array");
    for (const auto& row : mult) {
      if (!row.is_array() || row.size() != 3) bad("objects.mult rows are [x, y, x.y]");
      o.mult[o.index_of(str(row[0], "object")) * n + o.index_of(str(row[1], "object"))] =
          o.index_of(str(row[2], "object"));
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (o.mult[x * n + y] == kUnset) ill("objects.mult has no entry for (" + o.names[x] + "," + o.names[y] + ")");
    return o;
  }

  std::size_t grade(const json& j) {
    std::string g = str(j, "grade");
    try {
      return m_.pcm.index_of(m_.pcm.parse_grade(g));
    } catch (const Error&) {
      ill("'" + g + "' is not a grade of " + m_.pcm.descriptor());
    }
  }
  std::size_t object(const json& j) { return m_.objects.index_of(str(j, "object")); }

  std::string hom_name(std::size_t e, std::size_t x, std::size_t y) const {
    return "grade " + m_.grade_name(e) + " hom(" + m_.objects.names[x] + "," + m_.objects.names[y] + ")";
  }
  Label label(std::size_t e, std::size_t x, std::size_t y, const json& j, const std::string& where) {
    std::string l = str(j, "label");
    auto i = m_.find_label(e, x, y, l);
    if (!i) ill(where + ": '" + l + "' is not in " + hom_name(e, x, y));
    return *i;
  }

  void parse_hom() {
    if (!doc_.contains("hom")) return;
    for (const auto& h : doc_.at("hom")) {
      const std::size_t e = grade(field(h, "grade")), x = object(field(h, "dom")), y = object(field(h, "cod"));
      auto& ls = m_.hom[e][m_.pair(x, y)];
      if (!ls.empty()) ill(hom_name(e, x, y) + " is declared twice");
      for (const auto& l : field(h, "labels")) ls.push_back(str(l, "label"));
    }
  }

  void size_tables() {
    const std::size_t g = m_.grades(), n = m_.size();
    for (std::size_t e = 0; e < g; ++e)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z)
            m_.comp[e][m_.triple(x, y, z)].assign(m_.count(e, x, y) * m_.count(e, y, z), kUnset);
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b) {
        if (m_.alg.leq(a, b))
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
              auto& t = m_.regrade[a * g + b][m_.pair(x, y)];
              t.assign(m_.count(a, x, y), kUnset);
              if (a == b)
                for (Label i = 0; i < t.size(); ++i) t[i] = i;
            }
        if (m_.alg.add(a, b))
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              for (std::size_t x2 = 0; x2 < n; ++x2)
                for (std::size_t y2 = 0; y2 < n; ++y2)
                  m_.tensor[a * g + b][m_.quad(x, y, x2, y2)].assign(m_.count(a, x, y) * m_.count(b, x2, y2), kUnset);
      }
    m_.id.assign(n, kUnset);
  }

  void parse_id() {
    const json& ids = field(doc_, "id");
    if (!ids.is_object()) bad("id must be an object");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      const std::size_t x = m_.objects.index_of(it.key());
      m_.id[x] = label(m_.zero(), x, x, it.value(), "id of " + it.key());
    }
  }

  void parse_comp() {
    if (!doc_.contains("comp")) return;
    for (const auto& c : doc_.at("comp")) {
      const std::size_t e = grade(field(c, "grade"));
      const json& os = field(c, "objects");
      if (!os.is_array() || os.size() != 3) bad("comp objects are [x, y, z]");
      const std::size_t x = object(os[0]), y = object(os[1]), z = object(os[2]);
      auto& t = m_.comp[e][m_.triple(x, y, z)];
      const std::string where = "comp at grade " + m_.grade_name(e) + " objects (" + m_.objects.names[x] + "," +
                                m_.objects.names[y] + "," + m_.objects.names[z] + ")";
      for (const auto& row : field(c, "table")) {
        if (!row.is_array() || row.size() != 3) bad(where + ": rows are [f, g, f;g]");
        Label f = label(e, x, y, row[0], where), g = label(e, y, z, row[1], where);
        t[f * m_.count(e, y, z) + g] = label(e, x, z, row[2], where);
      }
    }
  }

  void parse_regrade() {
    if (!doc_.contains("regrade")) return;
    const std::size_t G = m_.grades();
    for (const auto& r : doc_.at("regrade")) {
      const std::size_t a = grade(field(r, "from")), b = grade(field(r, "to"));
      const std::size_t x = object(field(r, "dom")), y = object(field(r, "cod"));
      if (!m_.alg.leq(a, b)) ill("regrade from " + m_.grade_name(a) + " to " + m_.grade_name(b) + " is not an extension");
      const std::string where = "regrade " + m_.grade_name(a) + " to " + m_.grade_name(b) + " on " + hom_name(a, x, y);
      auto& t = m_.regrade[a * G + b][m_.pair(x, y)];
      const json& map = field(r, "map");
      if (!map.is_object()) bad(where + ": map must be an object");
      for (auto it = map.begin(); it != map.end(); ++it)
        t[label(a, x, y, json(it.key()), where)] = label(b, x, y, it.value(), where);
    }
  }

  void parse_tensor() {
    if (!doc_.contains("tensor")) return;
    const std::size_t G = m_.grades();
    const auto& O = m_.objects;
    for (const auto& t : doc_.at("tensor")) {
      const json& gs = field(t, "grades");
      const json& os = field(t, "objects");
      if (!gs.is_array() || gs.size() != 2) bad("tensor grades are [e, e2]");
      if (!os.is_array() || os.size() != 4) bad("tensor objects are [x, y, x2, y2]");
      const std::size_t a = grade(gs[0]), b = grade(gs[1]);
      auto s = m_.alg.add(a, b);
      if (!s) ill("tensor at non-orthogonal grades (" + m_.grade_name(a) + "," + m_.grade_name(b) + ")");
      const std::size_t x = object(os[0]), y = object(os[1]), x2 = object(os[2]), y2 = object(os[3]);
      const std::string where = "tensor at grades (" + m_.grade_name(a) + "," + m_.grade_name(b) + ") objects (" +
                                O.names[x] + "," + O.names[y] + "," + O.names[x2] + "," + O.names[y2] + ")";
      auto& tab = m_.tensor[a * G + b][m_.quad(x, y, x2, y2)];
      for (const auto& row : field(t, "table")) {
        if (!row.is_array() || row.size() != 3) bad(where + ": rows are [f, g, f*g]");
        Label f = label(a, x, y, row[0], where), g = label(b, x2, y2, row[1], where);
        tab[f * m_.count(b, x2, y2) + g] = label(*s, O(x, x2), O(y, y2), row[2], where);
      }
    }
  }

  void parse_braiding() {
    if (!doc_.contains("braiding")) return;
    const std::size_t n = m_.size();
    std::vector<Label> br(n * n, kUnset);
    for (const auto& row : doc_.at("braiding")) {
      if (!row.is_array() || row.size() != 3) bad("braiding rows are [x, y, label]");
      const std::size_t x = object(row[0]), y = object(row[1]);
      br[m_.pair(x, y)] = label(m_.zero(), m_.objects(x, y), m_.objects(y, x), row[2],
                                "braiding at (" + m_.objects.names[x] + "," + m_.objects.names[y] + ")");
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (br[m_.pair(x, y)] == kUnset)
          ill("braiding has no entry at (" + m_.objects.names[x] + "," + m_.objects.names[y] + ")");
    m_.braiding = std::move(br);
  }

  void find_unset() {
    const std::size_t g = m_.grades(), n = m_.size();
    const auto& N = m_.objects.names;
    for (std::size_t x = 0; x < n; ++x)
      if (m_.id[x] == kUnset) ill("id has no entry for " + N[x]);
    for (std::size_t e = 0; e < g; ++e)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) {
            const auto& t = m_.comp[e][m_.triple(x, y, z)];
            for (std::size_t k = 0; k < t.size(); ++k)
              if (t[k] == kUnset)
                ill("comp at grade " + m_.grade_name(e) + " objects (" + N[x] + "," + N[y] + "," + N[z] + ") labels (" +
                    m_.labels(e, x, y)[k / m_.count(e, y, z)] + "," + m_.labels(e, y, z)[k % m_.count(e, y, z)] +
                    ") is missing");
          }
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t b = 0; b < g; ++b) {
        for (std::size_t p = 0; p < m_.regrade[a * g + b].size(); ++p) {
          const auto& t = m_.regrade[a * g + b][p];
          for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] == kUnset)
              ill("regrade " + m_.grade_name(a) + " to " + m_.grade_name(b) + " of '" + m_.hom[a][p][i] + "' in hom(" +
                  N[p / n] + "," + N[p % n] + ") is missing");
        }
        for (std::size_t q = 0; q < m_.tensor[a * g + b].size(); ++q) {
          const auto& t = m_.tensor[a * g + b][q];
          const std::size_t y2 = q % n, x2 = q / n % n, y = q / n / n % n, x = q / n / n / n;
          for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] == kUnset)
              ill("tensor at grades (" + m_.grade_name(a) + "," + m_.grade_name(b) + ") objects (" + N[x] + "," + N[y] +
                  "," + N[x2] + "," + N[y2] + ") labels (" + m_.labels(a, x, y)[k / m_.count(b, x2, y2)] + "," +
                  m_.labels(b, x2, y2)[k % m_.count(b, x2, y2)] + ") is missing");
        }
      }
  }

  const json& doc_;
  FiniteGradedModel& m_;
};

}  // namespace

// One top-level key per line, one array element per line, compact inside.
std::string layout(const nlohmann::ordered_json& doc) {
  std::string out = "{\n";
  std::size_t k = 0;
  for (auto it = doc.begin(); it != doc.end(); ++it, ++k) {
    out += " " + ojson(it.key()).dump() + ": ";
    const auto& v = it.value();
    if (v.is_array() && !v.empty()) {
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) out += "  " + v[i].dump() + (i + 1 < v.size() ? ",\n" : "\n");
      out += " ]";
    } else {
      out += v.dump();
    }
    out += k + 1 < doc.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

FiniteGradedModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  try {
    return Loader::load(doc);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

FiniteGradedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

std::string save_model(const FiniteGradedModel& m) {
  const std::size_t g = m.grades(), n = m.size();
  const auto& N = m.objects.names;
  ojson doc;
  doc["format"] = "gmcmodel/1";
  doc["pcm"] = m.pcm.descriptor();
  ojson mult = ojson::array();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) mult.push_back({N[x], N[y], N[m.objects(x, y)]});
  doc["objects"] = {{"names", N}, {"unit", N[m.objects.unit]}, {"mult", mult}};
  ojson hom = ojson::array();
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (m.count(e, x, y))
          hom.push_back({{"grade", m.grade_name(e)}, {"dom", N[x]}, {"cod", N[y]}, {"labels", m.labels(e, x, y)}});
  doc["hom"] = hom;
  ojson ids = ojson::object();
  for (std::size_t x = 0; x < n; ++x) ids[N[x]] = m.labels(m.zero(), x, x)[m.id[x]];
  doc["id"] = ids;
  ojson comp = ojson::array();
  for (std::size_t e = 0; e < g; ++e)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          if (!m.count(e, x, y) || !m.count(e, y, z)) continue;
          ojson table = ojson::array();
          for (Label f = 0; f < m.count(e, x, y); ++f)
            for (Label h = 0; h < m.count(e, y, z); ++h)
              table.push_back({m.labels(e, x, y)[f], m.labels(e, y, z)[h], m.labels(e, x, z)[m.compose(e, x, y, z, f, h)]});
          comp.push_back({{"grade", m.grade_name(e)}, {"objects", {N[x], N[y], N[z]}}, {"table", table}});
        }
  doc["comp"] = comp;
  ojson reg = ojson::array();
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      if (a == b || !m.alg.leq(a, b)) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (!m.count(a, x, y)) continue;
          ojson map = ojson::object();
          for (Label f = 0; f < m.count(a, x, y); ++f) map[m.labels(a, x, y)[f]] = m.labels(b, x, y)[m.regraded(a, b, x, y, f)];
          reg.push_back({{"from", m.grade_name(a)}, {"to", m.grade_name(b)}, {"dom", N[x]}, {"cod", N[y]}, {"map", map}});
        }
    }
  doc["regrade"] = reg;
  ojson ten = ojson::array();
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = 0; b < g; ++b) {
      auto s = m.alg.add(a, b);
      if (!s) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t x2 = 0; x2 < n; ++x2)
            for (std::size_t y2 = 0; y2 < n; ++y2) {
              if (!m.count(a, x, y) || !m.count(b, x2, y2)) continue;
              ojson table = ojson::array();
              const std::size_t xx = m.objects(x, x2), yy = m.objects(y, y2);
              for (Label f = 0; f < m.count(a, x, y); ++f)
                for (Label h = 0; h < m.count(b, x2, y2); ++h)
                  table.push_back({m.labels(a, x, y)[f], m.labels(b, x2, y2)[h],
                                   m.labels(*s, xx, yy)[m.tensored(a, b, x, y, x2, y2, f, h)]});
              ten.push_back({{"grades", {m.grade_name(a), m.grade_name(b)}},
                             {"objects", {N[x], N[y], N[x2], N[y2]}},
                             {"table", table}});
            }
    }
  doc["tensor"] = ten;
  if (m.braiding) {
    ojson br = ojson::array();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        br.push_back({N[x], N[y], m.labels(m.zero(), m.objects(x, y), m.objects(y, x))[(*m.braiding)[m.pair(x, y)]]});
    doc["braiding"] = br;
  }
  return layout(doc);
}

}  // namespace gmc
