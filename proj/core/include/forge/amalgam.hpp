#pragma once

#include <map>
#include <string>
#include <vector>

#include "forge/ambient.hpp"

namespace forge {

/// Two spaces glued over a common part. The embeddings send shared ids to left/right ids.
struct AmalgamDiagram {
  FiniteMetricSpace left;
  FiniteMetricSpace right;
  FiniteMetricSpace shared;
  std::map<PointId, PointId> embed_left;
  std::map<PointId, PointId> embed_right;
};

struct Amalgam {
  FiniteMetricSpace space;
  std::map<PointId, PointId> left_to_w;
  std::map<PointId, PointId> right_to_w;
};

/// Throws unless both embeddings are total, injective and distance preserving and all
/// three spaces share one DistanceSpec.
void check_diagram(AmalgamDiagram const& diagram);

/// Left points keep their ids; right points outside the shared image get ids after the
/// largest left id. Cross distances are the shortest path through the shared part,
/// capped at the spec's maximum (the maximum itself when nothing is shared).
Amalgam strong_amalgamate(AmalgamDiagram const& diagram);

/// Raised when the family passed to lemma_red_copy breaks the max/min hypotheses.
class RedHypothesisError : public Error {
 public:
  RedHypothesisError(std::string what, std::size_t first, std::size_t second)
      : Error(std::move(what)), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_, second_;
};

/// max |g - g'| and min (g + g') agree on G0 and on G for every pair of the family.
/// Returns the offending pair, if any.
std::optional<std::pair<std::size_t, std::size_t>> red_hypothesis_violation(
    std::vector<KatetovMap> const& family, std::vector<PointId> const& G0);

/// A copy C inside `parent` with C n G = G0 in which every realizer of g|G0 over G0
/// realizes g over G, for each g in the family (maps with domain G). Members outside
/// the orbits sit where the amalgam over G0 and the orbits puts them, so C keeps the
/// extension property.
CopyId lemma_red_copy(AmbientSpace& ambient, CopyId parent, std::vector<PointId> const& G0,
                      std::vector<PointId> const& G, std::vector<KatetovMap> family,
                      std::string label = "red");

struct Red1Result {
  KatetovMap k;                        // over G0 u X
  PointId z_prime = 0;                 // realizes k
  std::map<PointId, PointId> image;    // x -> phi(x) for every x in X
};

/// One-point version (G = G0 u {z}). Every x in X realizes g|G0 for some g in the
/// family. Points already realizing their g stay put; the others move into O(g)
/// while all mutual distances and distances to G0 are preserved.
Red1Result red1_fix_isometry(AmbientSpace& ambient, std::vector<PointId> const& G0, PointId z,
                             std::vector<KatetovMap> const& family,
                             std::vector<PointId> const& X);

/// Embeds the points Y (each in some O(g|G0)) into the union of the O(g), fixing G0,
/// one point at a time over the enumeration order of Y.
std::map<PointId, PointId> red2_embed(AmbientSpace& ambient, std::vector<PointId> const& G0,
                                      PointId z, std::vector<KatetovMap> const& family,
                                      std::vector<PointId> const& Y);

}  // namespace forge
