#include "crowddet/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowddet {

namespace {

constexpr double kGaussianCutoffSigmas = 6.0;

struct BuildParts {
    bool center = false;
    bool gaussian = false;
    bool scale = false;
    bool offset = false;
    bool density = false;
};

std::vector<Cell> positive_cells(double cx, double cy, int rows, int cols) {
    // {floor(c), floor(c)+1} per axis; for fractional centers floor+1 equals
    // ceil, for integer-aligned ones it keeps the count at four.
    const int lox = static_cast<int>(std::floor(cx));
    const int loy = static_cast<int>(std::floor(cy));
    std::vector<Cell> out;
    out.reserve(4);
    for (int dy = 0; dy <= 1; ++dy) {
        for (int dx = 0; dx <= 1; ++dx) {
            const Cell c{lox + dx, loy + dy};
            if (c.x >= 0 && c.x < cols && c.y >= 0 && c.y < rows) out.push_back(c);
        }
    }
    return out;
}

// -1 = unowned; otherwise the object index currently holding the cell.
// Smaller-area objects win contested cells; ties keep the earlier object.
void claim_cells(GridT<int>& owner, const std::vector<ObjectTarget>& objs, int obj_index,
                 const std::vector<Cell>& cells) {
    const double a = area(objs[obj_index].box);
    for (const Cell& c : cells) {
        int& cur = owner.at(c.y, c.x);
        if (cur < 0 || area(objs[cur].box) > a) cur = obj_index;
    }
}

TargetMaps build(const GroundTruthScene& scene, int r, bool predict_width, const BuildParts& parts) {
    const GridShape shape = grid_shape(scene, r);
    const int rows = shape.rows;
    const int cols = shape.cols;

    TargetMaps maps;
    maps.r = r;
    maps.predict_width = predict_width;

    std::vector<BBox> real_boxes;
    for (const GtBox& gt : scene.boxes) {
        if (gt.ignore) continue;
        ObjectTarget obj;
        obj.box = gt.box;
        obj.center_x = gt.box.center_x() / r;
        obj.center_y = gt.box.center_y() / r;
        obj.positives = positive_cells(obj.center_x, obj.center_y, rows, cols);
        maps.objects.push_back(std::move(obj));
        real_boxes.push_back(gt.box);
    }
    const int n = static_cast<int>(maps.objects.size());

    if (parts.density) {
        const std::vector<double> d = pairwise_max_iou(real_boxes);
        for (int k = 0; k < n; ++k) maps.objects[k].density = d[k];
    }

    if (parts.scale) {
        for (ObjectTarget& obj : maps.objects) {
            if (obj.box.height() <= 0.0) {
                throw std::invalid_argument("scale target: box height must be positive");
            }
            if (predict_width && obj.box.width() <= 0.0) {
                throw std::invalid_argument("scale target: box width must be positive");
            }
            obj.log_h = std::log(obj.box.height());
            if (predict_width) obj.log_w = std::log(obj.box.width());
        }
    }

    if (parts.center) {
        maps.center = ByteGrid(rows, cols, 1, 0);
        for (const ObjectTarget& obj : maps.objects) {
            for (const Cell& c : obj.positives) maps.center.at(c.y, c.x) = 1;
        }
    }

    if (parts.gaussian) {
        maps.gaussian = Grid(rows, cols, 1, 0.0);
        for (const ObjectTarget& obj : maps.objects) {
            const double sx = std::max(obj.box.width() / (6.0 * r), 0.5);
            const double sy = std::max(obj.box.height() / (6.0 * r), 0.5);
            const int x0 = std::max(0, static_cast<int>(std::ceil(obj.center_x - kGaussianCutoffSigmas * sx)));
            const int x1 = std::min(cols - 1, static_cast<int>(std::floor(obj.center_x + kGaussianCutoffSigmas * sx)));
            const int y0 = std::max(0, static_cast<int>(std::ceil(obj.center_y - kGaussianCutoffSigmas * sy)));
            const int y1 = std::min(rows - 1, static_cast<int>(std::floor(obj.center_y + kGaussianCutoffSigmas * sy)));
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    const double dx = (x - obj.center_x) / sx;
                    const double dy = (y - obj.center_y) / sy;
                    const double v = std::exp(-0.5 * (dx * dx + dy * dy));
                    double& m = maps.gaussian.at(y, x);
                    m = std::max(m, v);
                }
            }
            for (const Cell& c : obj.positives) maps.gaussian.at(c.y, c.x) = 1.0;
        }
    }

    if (parts.offset || parts.density) {
        GridT<int> owner(rows, cols, 1, -1);
        for (int k = 0; k < n; ++k) claim_cells(owner, maps.objects, k, maps.objects[k].positives);
        for (int k = 0; k < n; ++k) {
            for (const Cell& c : maps.objects[k].positives) {
                if (owner.at(c.y, c.x) == k) maps.objects[k].regression_cells.push_back(c);
            }
        }
        if (parts.offset) {
            maps.offset = Grid(rows, cols, 2, 0.0);
            maps.offset_valid = ByteGrid(rows, cols, 1, 0);
            for (const ObjectTarget& obj : maps.objects) {
                for (const Cell& c : obj.regression_cells) {
                    maps.offset.at(c.y, c.x, 0) = obj.center_x - c.x;
                    maps.offset.at(c.y, c.x, 1) = obj.center_y - c.y;
                    maps.offset_valid.at(c.y, c.x) = 1;
                }
            }
        }
        if (parts.density) {
            maps.density = Grid(rows, cols, 1, 0.0);
            maps.density_valid = ByteGrid(rows, cols, 1, 0);
            for (const ObjectTarget& obj : maps.objects) {
                for (const Cell& c : obj.regression_cells) {
                    maps.density.at(c.y, c.x) = obj.density;
                    maps.density_valid.at(c.y, c.x) = 1;
                }
            }
        }
    }

    if (parts.scale) {
        // 2x2 positive block dilated by one cell in every direction, clamped.
        std::vector<std::vector<Cell>> blocks(n);
        for (int k = 0; k < n; ++k) {
            const ObjectTarget& obj = maps.objects[k];
            const int lox = static_cast<int>(std::floor(obj.center_x));
            const int loy = static_cast<int>(std::floor(obj.center_y));
            for (int y = loy - 1; y <= loy + 2; ++y) {
                for (int x = lox - 1; x <= lox + 2; ++x) {
                    if (x >= 0 && x < cols && y >= 0 && y < rows) blocks[k].push_back(Cell{x, y});
                }
            }
        }
        GridT<int> owner(rows, cols, 1, -1);
        for (int k = 0; k < n; ++k) claim_cells(owner, maps.objects, k, blocks[k]);
        maps.scale = Grid(rows, cols, predict_width ? 2 : 1, 0.0);
        maps.scale_valid = ByteGrid(rows, cols, 1, 0);
        for (int k = 0; k < n; ++k) {
            ObjectTarget& obj = maps.objects[k];
            for (const Cell& c : blocks[k]) {
                if (owner.at(c.y, c.x) != k) continue;
                obj.scale_cells.push_back(c);
                maps.scale.at(c.y, c.x, 0) = obj.log_h;
                if (predict_width) maps.scale.at(c.y, c.x, 1) = obj.log_w;
                maps.scale_valid.at(c.y, c.x) = 1;
            }
        }
    }

    return maps;
}

}  // namespace

GridShape grid_shape(const GroundTruthScene& scene, int r) {
    if (r < 1) throw std::invalid_argument("grid_shape: down-sampling rate must be >= 1");
    if (scene.width < r || scene.height < r) {
        throw std::invalid_argument("grid_shape: image does not down-sample to a nonempty grid");
    }
    return GridShape{(scene.height + r - 1) / r, (scene.width + r - 1) / r};
}

CenterTarget center_target(const GroundTruthScene& scene, int r) {
    TargetMaps maps = build(scene, r, false, BuildParts{.center = true});
    CenterTarget out;
    out.grid = std::move(maps.center);
    out.object_positives.reserve(maps.objects.size());
    for (ObjectTarget& obj : maps.objects) out.object_positives.push_back(std::move(obj.positives));
    return out;
}

Grid gaussian_mask(const GroundTruthScene& scene, int r) {
    return build(scene, r, false, BuildParts{.gaussian = true}).gaussian;
}

ScaleTarget scale_target(const GroundTruthScene& scene, int r, bool predict_width) {
    TargetMaps maps = build(scene, r, predict_width, BuildParts{.scale = true});
    return ScaleTarget{std::move(maps.scale), std::move(maps.scale_valid)};
}

OffsetTarget offset_target(const GroundTruthScene& scene, int r) {
    TargetMaps maps = build(scene, r, false, BuildParts{.offset = true});
    return OffsetTarget{std::move(maps.offset), std::move(maps.offset_valid)};
}

DensityTarget density_target(const GroundTruthScene& scene, int r) {
    TargetMaps maps = build(scene, r, false, BuildParts{.density = true});
    DensityTarget out;
    out.grid = std::move(maps.density);
    out.valid = std::move(maps.density_valid);
    out.per_object.reserve(maps.objects.size());
    for (const ObjectTarget& obj : maps.objects) out.per_object.push_back(obj.density);
    return out;
}

TargetMaps build_target_maps(const GroundTruthScene& scene, int r, bool predict_width) {
    return build(scene, r, predict_width,
                 BuildParts{.center = true, .gaussian = true, .scale = true, .offset = true, .density = true});
}

}  // namespace crowddet
