#pragma once

// Named maps and lattice actions shipped with the library.
//
// Map entries take one of four shapes:
//   {"k": int, "comps": [[...], ...]}   explicit exponent vectors
//   {"permutation": [p_0, ..., p_k]}    [x_{p_0} : ... : x_{p_k}]
//   {"torus": [[...], ...]}             rehomogenized torus action y -> y^T
//   {"compose": ["f", "g", ...]}        f o g o ... of earlier entries
// Matrix entries carry a surface lattice and either explicit "rows" or a list
// of "roots" whose reflections are multiplied in order.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nslattice/corpus_data.hpp"
#include "nslattice/cremona.hpp"
#include "nslattice/json_io.hpp"
#include "nslattice/spectral.hpp"

namespace nslattice {

struct CorpusMatrix {
  BlowupLattice lattice;
  IntegerMatrix matrix;
  std::vector<NSClass> roots;  // empty for explicit matrices
};

class Corpus {
 public:
  static Corpus parse(const io::json& doc) {
    Corpus c;
    c.version_ = static_cast<int>(io::small_int_from_json(io::field(doc, "version", "corpus"), "corpus.version"));
    const io::json& maps = io::field(doc, "maps", "corpus");
    if (!maps.is_object()) throw ValidationError("corpus.maps: expected object");
    std::set<std::string> resolving;
    for (auto it = maps.begin(); it != maps.end(); ++it) c.resolve_map(maps, it.key(), resolving);

    if (doc.contains("matrices")) {
      const io::json& mats = doc["matrices"];
      for (auto it = mats.begin(); it != mats.end(); ++it) {
        std::string w = "corpus.matrices." + it.key();
        CorpusMatrix m;
        m.lattice = io::lattice_from_json(io::field(*it, "lattice", w), w + ".lattice");
        if (it->contains("rows")) {
          m.matrix = io::matrix_from_json((*it)["rows"], w + ".rows");
        } else {
          const io::json& roots = io::array(io::field(*it, "roots", w), w + ".roots");
          for (std::size_t i = 0; i < roots.size(); ++i)
            m.roots.push_back(io::class_from_json(roots[i], io::idx(w + ".roots", i)));
          m.matrix = reflection_product(m.lattice, m.roots);
        }
        c.matrices_.emplace(it.key(), std::move(m));
      }
    }
    return c;
  }

  static const Corpus& builtin() {
    static const Corpus corpus = parse(io::parse_document(corpus_data::kCorpusJson, "corpus.json"));
    return corpus;
  }

  int version() const { return version_; }
  const std::map<std::string, MonomialMap>& maps() const { return maps_; }
  const std::map<std::string, CorpusMatrix>& matrices() const { return matrices_; }

  const MonomialMap& map(const std::string& name) const {
    auto it = maps_.find(name);
    if (it == maps_.end()) throw ValidationError("unknown corpus map '" + name + "'");
    return it->second;
  }

  const CorpusMatrix& matrix(const std::string& name) const {
    auto it = matrices_.find(name);
    if (it == matrices_.end()) throw ValidationError("unknown corpus matrix '" + name + "'");
    return it->second;
  }

 private:
  const MonomialMap& resolve_map(const io::json& maps, const std::string& name, std::set<std::string>& resolving) {
    if (auto it = maps_.find(name); it != maps_.end()) return it->second;
    std::string w = "corpus.maps." + name;
    if (!maps.contains(name)) throw ValidationError(w + ": referenced but not defined");
    if (!resolving.insert(name).second) throw ValidationError(w + ": cyclic composition");
    const io::json& e = maps[name];
    MonomialMap f = MonomialMap::identity(1);
    if (e.contains("comps")) {
      f = io::map_from_json(e, w);
    } else if (e.contains("permutation")) {
      std::vector<int> perm;
      for (const auto& p : io::array(e["permutation"], w + ".permutation")) perm.push_back(p.get<int>());
      f = MonomialMap::coordinate_permutation(perm);
    } else if (e.contains("torus")) {
      std::vector<std::vector<std::int64_t>> t;
      for (const auto& row : io::array(e["torus"], w + ".torus")) t.push_back(row.get<std::vector<std::int64_t>>());
      f = MonomialMap::from_torus_matrix(t);
    } else if (e.contains("compose")) {
      const io::json& parts = io::array(e["compose"], w + ".compose");
      if (parts.empty()) throw ValidationError(w + ".compose: empty");
      f = resolve_map(maps, parts.back().get<std::string>(), resolving);
      for (std::size_t i = parts.size() - 1; i-- > 0;)
        f = compose(resolve_map(maps, parts[i].get<std::string>(), resolving), f);
    } else {
      throw ValidationError(w + ": expected comps, permutation, torus or compose");
    }
    if (!f.is_birational()) throw ValidationError(w + ": map is not birational");
    resolving.erase(name);
    return maps_.emplace(name, std::move(f)).first->second;
  }

  int version_ = 0;
  std::map<std::string, MonomialMap> maps_;
  std::map<std::string, CorpusMatrix> matrices_;
};

}  // namespace nslattice
