// Three-disc projective atlas assembly and serialization: scene geometry on
// the Poincaré discs, SVG rendering, and the structured JSON analysis report.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projatlas/flow.hpp"
#include "projatlas/projective.hpp"
#include "projatlas/structure.hpp"
#include "projatlas/system.hpp"

namespace projatlas {

/// Everything the symbolic pipeline can say about one system; consumed by the
/// JSON writer, the atlas builder, and the CLI subcommands.
struct AnalysisReport {
  PlaneSystem system;
  ProjectiveTypeReport type;
  ReducedSystem first, second;
  DegreePrediction degrees;
  std::vector<Equilibrium> equilibria;
  InfiniteEquilibriaReport infinite;
  std::vector<AxisContact> contacts_first_axis;
  std::vector<AxisContact> contacts_second_axis;
  EquatorialContactReport equatorial;
  SymmetryReport symmetry;
  InvariantLineReport lines;

  struct CycleEntry {
    std::string name;  ///< "line at infinity" or the printed curve
    CycleReport report;
  };
  std::vector<CycleEntry> cycles;
};

AnalysisReport run_analysis(const PlaneSystem& sys);

enum class CurveStyle { Trajectory, InvariantLine, Equator };

struct SceneCurve {
  CurveStyle style = CurveStyle::Trajectory;
  std::vector<std::pair<double, double>> points;  ///< disc coordinates, |p| <= 1
};

enum class GlyphKind {
  SaddleCross,
  NodeDot,
  FocusSpiral,
  CenterRing,
  DegenerateDiamond,
  ContactHalfDisc,
  ContactCrossing
};

struct SceneMarker {
  GlyphKind glyph = GlyphKind::NodeDot;
  std::pair<double, double> at{0.0, 0.0};  ///< disc coordinates
  /// Unit vector (disc coordinates) pointing into the certified half-plane;
  /// orients the half-disc contact glyph.
  std::optional<std::pair<double, double>> side;
  bool stable = false;  ///< colors node/focus glyphs
  std::string label;
};

struct ChartScene {
  ChartId chart = ChartId::XY;
  std::vector<SceneCurve> curves;
  std::vector<SceneMarker> markers;
  std::string label;
};

struct AtlasDocument {
  /// Always ordered (XY, XiTheta, EtaZeta) regardless of the system's chart.
  std::array<ChartScene, 3> scenes;
  AnalysisReport report;
  /// Per-seed integration failures; collecting them keeps one bad seed from
  /// aborting the whole document.
  std::vector<std::string> integration_errors;
};

/// Disc coordinates of a chart point as seen in a scene.  Interior points of
/// the scene's chart land strictly inside the unit disc; points of the
/// scene's equator land on the boundary (the antipodal twin -p names the same
/// projective point).
std::pair<double, double> scene_embed(ChartId scene, ChartId chart,
                                      std::pair<double, double> p);

/// Runs the analysis pipeline, integrates the seed plan, and embeds all
/// curves and markers into the three discs.  Deterministic for fixed inputs.
AtlasDocument build_atlas(const PlaneSystem& sys, const IntegratorConfig& cfg,
                          int density);

/// Standalone SVG (1360 x 480): three 400-px discs with 40-px gutters, floats
/// at six decimals so equal documents give byte-identical output.
std::string render_svg(const AtlasDocument& doc);

/// UTF-8 JSON with fixed key order; polynomials printed in the input grammar.
std::string write_report_json(const AnalysisReport& report);

}  // namespace projatlas
