#include "garside/germ_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace garside {

namespace {

  using nlohmann::json;

  [[noreturn]] void bad(std::string const& what) { throw GermFileError(what); }

  std::string string_field(json const& j, char const* key, std::string const& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
      bad(where + ": '" + key + "' must be a string");
    }
    return it->get<std::string>();
  }

  void only_keys(json const& j, std::set<std::string> const& allowed,
                 std::string const& where) {
    for (auto const& [k, v] : j.items()) {
      if (!allowed.contains(k)) {
        bad(where + ": unknown key '" + k + "'");
      }
    }
  }

  std::string quoted(std::string const& s) { return json(s).dump(); }

}  // namespace

GermSpec parse_germ_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    bad("a germ file is a JSON object");
  }
  only_keys(doc, {"objects", "elements", "products"}, "germ file");
  for (auto key : {"objects", "elements", "products"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      bad(std::string("germ file: '") + key + "' must be an array");
    }
  }
  GermSpec spec;
  for (auto const& o : doc["objects"]) {
    if (!o.is_string()) {
      bad("objects: names must be strings");
    }
    spec.objects.push_back(o.get<std::string>());
  }
  for (auto const& e : doc["elements"]) {
    if (!e.is_object()) {
      bad("elements: each entry must be an object");
    }
    only_keys(e, {"name", "source", "target", "identity"}, "element");
    GermSpec::Element el;
    el.name   = string_field(e, "name", "element");
    el.source = string_field(e, "source", "element '" + el.name + "'");
    el.target = string_field(e, "target", "element '" + el.name + "'");
    if (auto it = e.find("identity"); it != e.end()) {
      if (!it->is_boolean()) {
        bad("element '" + el.name + "': 'identity' must be a boolean");
      }
      el.identity = it->get<bool>();
    }
    spec.elements.push_back(std::move(el));
  }
  for (auto const& p : doc["products"]) {
    if (!p.is_array() || p.size() != 3
        || !std::all_of(p.begin(), p.end(), [](json const& x) { return x.is_string(); })) {
      bad("products: each entry must be [a, b, c] with element names");
    }
    spec.products.push_back({p[0].get<std::string>(), p[1].get<std::string>(),
                             p[2].get<std::string>()});
  }
  return spec;
}

std::string serialize_germ(GermSpec const& spec) {
  std::set<std::string> identities;
  for (auto const& e : spec.elements) {
    if (e.identity) {
      identities.insert(e.name);
    }
  }
  std::ostringstream out;
  out << "{\n  \"objects\": [";
  for (std::size_t i = 0; i < spec.objects.size(); ++i) {
    out << (i ? ", " : "") << quoted(spec.objects[i]);
  }
  out << "],\n  \"elements\": [";
  for (std::size_t i = 0; i < spec.elements.size(); ++i) {
    auto const& e = spec.elements[i];
    out << (i ? "," : "") << "\n    {\"name\": " << quoted(e.name)
        << ", \"source\": " << quoted(e.source) << ", \"target\": " << quoted(e.target);
    if (e.identity) {
      out << ", \"identity\": true";
    }
    out << "}";
  }
  out << (spec.elements.empty() ? "" : "\n  ") << "],\n  \"products\": [";
  bool first = true;
  for (auto const& [a, b, c] : spec.products) {
    if (identities.contains(a) || identities.contains(b)) {
      continue;
    }
    out << (first ? "" : ",") << "\n    [" << quoted(a) << ", " << quoted(b) << ", "
        << quoted(c) << "]";
    first = false;
  }
  out << (first ? "" : "\n  ") << "]\n}\n";
  return out.str();
}

GermSpec read_germ_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    bad("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_germ_file(buf.str());
}

}  // namespace garside
