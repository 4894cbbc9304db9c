#pragma once

#include <optional>
#include <vector>

#include "crowddet/geometry.hpp"
#include "crowddet/grid.hpp"

namespace crowddet {

/// One annotated box. Ignore-flagged boxes generate no supervision at all:
/// no positives, no scale/offset/density entries, no Gaussian contribution,
/// and they do not count as density neighbours of real boxes.
struct GtBox {
    BBox box;
    bool ignore = false;
    std::optional<double> visibility;  // fraction in [0,1], used by eval subset filters
};

/// Annotated boxes for one image. Boxes are expected inside [0,W]x[0,H].
struct GroundTruthScene {
    int width = 0;
    int height = 0;
    std::vector<GtBox> boxes;
};

/// Per-object supervision bookkeeping produced together with the grids.
///
/// The real center of an object at feature scale is (center_x, center_y) =
/// (cx/r, cy/r). Its positives are the four cells adjacent to that point:
/// {floor, ceil} per axis, with ceil replaced by floor+1 when the coordinate
/// is integer-aligned, clamped to the grid (border objects may keep fewer).
///
/// scale_cells and regression_cells list the cells this object actually owns
/// after conflict resolution: when the write regions of two objects overlap,
/// the smaller-area object wins the contested cell.
struct ObjectTarget {
    BBox box;
    double center_x = 0.0;  // grid units
    double center_y = 0.0;
    std::vector<Cell> positives;         // <= 4 cells
    std::vector<Cell> regression_cells;  // owned positives, carry offset + density
    std::vector<Cell> scale_cells;       // owned cells of the 4x4 dilated block
    double density = 0.0;                // max IoU against any other real box
    double log_h = 0.0;
    double log_w = 0.0;  // only meaningful when width is predicted
};

/// The ground-truth grids for one image at resolution (H/r) x (W/r).
/// scale has 1 channel (log h) or 2 (log h, log w); offset has 2 (dx, dy).
/// A cell carries a regression value iff its validity grid is nonzero; all
/// other cells are ignored by the losses.
struct TargetMaps {
    int r = 4;
    bool predict_width = false;
    ByteGrid center;       // 1 = positive, 0 = negative
    Grid gaussian;         // penalty mask M in [0,1], 1 at every positive cell
    Grid scale;
    ByteGrid scale_valid;
    Grid offset;
    ByteGrid offset_valid;
    Grid density;
    ByteGrid density_valid;
    std::vector<ObjectTarget> objects;  // non-ignored boxes, input order
};

struct CenterTarget {
    ByteGrid grid;
    std::vector<std::vector<Cell>> object_positives;
};

struct ScaleTarget {
    Grid values;
    ByteGrid valid;
};

struct OffsetTarget {
    Grid values;  // 2 channels
    ByteGrid valid;
};

struct DensityTarget {
    std::vector<double> per_object;
    Grid grid;
    ByteGrid valid;
};

/// Center classification target: the four cells around each real center are
/// positive, everything else negative. Throws when r < 1 or the image does
/// not down-sample to a nonempty grid.
CenterTarget center_target(const GroundTruthScene& scene, int r);

/// Elliptical Gaussian penalty mask, sigma = extent/(6r) per axis with a
/// floor of 0.5 cells, cellwise max across objects, stamped to exactly 1 at
/// every positive cell.
Grid gaussian_mask(const GroundTruthScene& scene, int r);

/// log(h) (natural log), and log(w) as a second channel when predict_width,
/// written on the 2x2 positive block dilated by one cell (4x4 inside the
/// grid). Throws on boxes with zero height (or zero width when predicted).
ScaleTarget scale_target(const GroundTruthScene& scene, int r, bool predict_width = false);

/// Offset from each positive cell towards the real center: value at cell
/// (px, py) is (cx - px, cy - py) in grid units, so cell + offset recovers
/// the real center exactly.
OffsetTarget offset_target(const GroundTruthScene& scene, int r);

/// Crowd density d_i = max IoU against the other real boxes, written at the
/// object's positive cells. Empty max (isolated box) is 0.
DensityTarget density_target(const GroundTruthScene& scene, int r);

/// Builds every grid plus the per-object records in one pass.
TargetMaps build_target_maps(const GroundTruthScene& scene, int r = 4, bool predict_width = false);

struct GridShape {
    int rows = 0;
    int cols = 0;
};

/// Grid dimensions for an image under down-sampling rate r (ceil division).
/// Throws when r < 1 or when the image does not cover at least one full cell.
GridShape grid_shape(const GroundTruthScene& scene, int r);

}  // namespace crowddet
