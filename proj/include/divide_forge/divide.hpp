#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "divide_forge/blocks.hpp"
#include "divide_forge/numeric.hpp"
#include "divide_forge/puiseux.hpp"

namespace divide_forge {

enum class BranchKind { Open, Closed };

struct Branch {
  BranchKind kind = BranchKind::Open;
  std::vector<Point> points;  // closed branches do not repeat the first vertex
};

struct Anchor {
  Point point;
  int sign = 1;
};

enum class VertexKind { Crossing, Endpoint, Dummy };

struct Vertex {
  VertexKind kind = VertexKind::Crossing;
  Point point;
  int crossing = -1;     // crossing id for crossing vertices
  std::vector<int> out;  // outgoing half-edges in counterclockwise order
};

enum class EdgeKind { Branch, Arc };

struct Edge {
  EdgeKind kind = EdgeKind::Branch;
  int branch = -1;
  std::vector<Point> chain;  // branch edges: exact polyline from origin to target
  double angle_from = 0.0;   // arcs: counterclockwise from angle_from to angle_to
  double angle_to = 0.0;
};

/// Half-edge 2e runs along edge e, 2e+1 against it.
struct HalfEdge {
  int origin = -1;
  int target = -1;
  int next = -1;
  int face = -1;  // region id, or -1 for the outside of the disk
};

struct Incidence {
  int branch = -1;
  int segment = -1;
  Rational t;  // position along the segment
};

enum class TagKind { None, Pattern, Grid };

struct CrossingTag {
  TagKind kind = TagKind::None;
  int index = -1;  // pattern crossing index, or base crossing id for grids
  int i = -1;
  int j = -1;
};

struct Crossing {
  Point point;
  std::array<Incidence, 2> passes;  // ordered by (branch, segment, t)
  int vertex = -1;
  CrossingTag tag;
};

struct Corner {
  int crossing = -1;
  int slot = -1;  // sector counterclockwise from out[slot] to out[slot + 1]
};

struct Region {
  std::vector<std::vector<int>> cycles;  // boundary half-edge cycles; the first is the outer one
  bool interior = false;
  int sign = 0;  // +1, -1, or 0 while unsigned
  std::vector<Corner> corners;
  std::vector<int> neighbors;  // regions across divide edges, sorted, with repetition per shared edge
  Point sample;                // dyadic point strictly inside
  double clearance = 0.0;      // distance from the sample to the region boundary
  double area = 0.0;
  std::vector<std::vector<PointD>> rings;  // boundary polygons matching `cycles`, arcs sampled
};

struct Divide;

/// Bookkeeping retained by a star product.
struct Provenance {
  int p = 1;
  int q = 1;
  std::vector<Point> core;            // the base branch after its final straightening
  std::shared_ptr<const Divide> base;  // signed arrangement of the guide curves
  int core_branch = 0;                 // index of the core inside `base`
  std::vector<int> pattern_branches;   // branches of the composed divide coming from the pattern
  std::vector<std::pair<int, int>> pplus;  // (composed region, base region)
};

struct Divide {
  std::vector<Branch> branches;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<HalfEdge> half_edges;
  std::vector<Crossing> crossings;
  std::vector<Region> regions;
  std::vector<Anchor> anchors;
  std::shared_ptr<const Provenance> provenance;
  int components = 0;  // connected components of the arrangement graph
  std::vector<puiseux::Pair> puiseux;  // pairs this divide was synthesized from, if any

  bool is_signed() const;
  int interior_count() const;
  /// Region strictly containing the point, or -1.
  int locate(PointD p) const;
  /// Polygon of a boundary cycle (arcs sampled), for containment tests and drawing.
  std::vector<PointD> cycle_polygon(const std::vector<int>& cycle, double arc_step = 0.05) const;
  int twin(int h) const { return h ^ 1; }
};

/// Exact arrangement of rational polylines in the closed unit disk. Throws Error with
/// TripleParty, Tangency, EndpointOnInterior or NotGeneric.
Divide build_arrangement(std::vector<Branch> branches);

/// Checkerboard signs propagated from the anchors. Throws InconsistentAnchors.
Divide assign_signs(Divide divide, const std::vector<Anchor>& anchors);

/// Sign of T(q,x) - T(p,y) at a box point (x,y).
int chebyshev_sign(int p, int q, PointD box);

struct StarParams {
  double eta = 0.0;  // 0 selects the automatic width
  int retries = 6;
  int samples = 8;   // pattern samples per arc of length pi/(pq)
};

Divide star_product(const blocks::ChebyshevPattern& pattern, const Divide& base, int branch, const StarParams& params = {});
Divide star_product_lissajous(const blocks::LissajousPattern& pattern, const Divide& base, int branch,
                              const StarParams& params = {});

/// One open branch along the horizontal diameter, unsigned regions signed + above.
Divide diameter_divide();

/// P_{p,q} inserted over the diameter and signed by the Chebyshev rule.
Divide chebyshev_divide(int p, int q, const StarParams& params = {});

/// Every stage of the iterated construction, innermost first.
std::vector<Divide> synth_stages(const puiseux::PuiseuxSeq& seq, const StarParams& params = {});
Divide synth(const puiseux::PuiseuxSeq& seq, const StarParams& params = {});

long long mu(const Divide& d);
/// Transversal intersections between the branches of two divides.
long long pair_intersections(const Divide& a, const Divide& b);
/// Intersections between the pattern branches and the retained core. Throws NoCore.
long long core_linking(const Divide& composed);

/// V - E + F with F counting the outside of the disk; equals 1 + components.
long long euler_characteristic(const Divide& d);
bool checkerboard_ok(const Divide& d);

void write_divide(const Divide& d, std::ostream& out);
std::string write_divide(const Divide& d);
Divide read_divide(std::istream& in);
Divide read_divide_file(const std::string& path);
Divide read_divide_string(const std::string& text);

}  // namespace divide_forge
