#include "cdbs/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cdbs {

ComponentMask::ComponentMask(int id, double eps, long u0, long v0, long width, long height)
    : id_(id), eps_(eps), u0_(u0), v0_(v0), width_(width), height_(height) {
    size_t words = (static_cast<size_t>(width) * static_cast<size_t>(height) + 63) / 64;
    bits_.assign(words, 0);
}

void ComponentMask::mark(Cell c) {
    size_t idx = static_cast<size_t>(c.v - v0_) * static_cast<size_t>(width_) +
                 static_cast<size_t>(c.u - u0_);
    bits_[idx >> 6] |= (uint64_t{1} << (idx & 63));
}

void ComponentMask::finalize() {
    count_ = 0;
    bool first = true;
    Box b;
    for (long v = v0_; v < v0_ + height_; ++v) {
        for (long u = u0_; u < u0_ + width_; ++u) {
            if (!marked({u, v})) continue;
            ++count_;
            if (first || u < min_cell_.u || (u == min_cell_.u && v < min_cell_.v))
                min_cell_ = {u, v};
            first = false;
            b.expand(Vec2{u * eps_, v * eps_});
            b.expand(Vec2{(u + 1) * eps_, (v + 1) * eps_});
        }
    }
    bbox_ = b;
}

bool ComponentMask::intersects(const ComponentMask& other) const {
    long ua = std::max(u0_, other.u0_);
    long ub = std::min(u0_ + width_, other.u0_ + other.width_);
    long va = std::max(v0_, other.v0_);
    long vb = std::min(v0_ + height_, other.v0_ + other.height_);
    for (long v = va; v < vb; ++v)
        for (long u = ua; u < ub; ++u)
            if (marked({u, v}) && other.marked({u, v})) return true;
    return false;
}

long ComponentMask::Sat::count(long ua, long va, long ub, long vb) const {
    ua = std::clamp(ua - u0, 0L, width);
    ub = std::clamp(ub - u0, 0L, width);
    va = std::clamp(va - v0, 0L, height);
    vb = std::clamp(vb - v0, 0L, height);
    if (ua >= ub || va >= vb) return 0;
    auto at = [&](long u, long v) { return sums[static_cast<size_t>(v) * (width + 1) + u]; };
    return static_cast<long>(at(ub, vb)) - at(ua, vb) - at(ub, va) + at(ua, va);
}

ComponentMask::Sat ComponentMask::build_sat() const {
    Sat s{u0_, v0_, width_, height_, {}};
    s.sums.assign(static_cast<size_t>(width_ + 1) * static_cast<size_t>(height_ + 1), 0);
    for (long v = 0; v < height_; ++v) {
        uint32_t row = 0;
        for (long u = 0; u < width_; ++u) {
            row += marked({u0_ + u, v0_ + v}) ? 1u : 0u;
            s.sums[static_cast<size_t>(v + 1) * (width_ + 1) + (u + 1)] =
                s.sums[static_cast<size_t>(v) * (width_ + 1) + (u + 1)] + row;
        }
    }
    return s;
}

namespace {

// Saturating conversions so unbounded boxes stay well-defined.
long sat_ceil(double v) {
    if (v >= 4.0e18) return 4000000000000000000L;
    if (v <= -4.0e18) return -4000000000000000000L;
    return static_cast<long>(std::ceil(v));
}
long sat_floor(double v) {
    if (v >= 4.0e18) return 4000000000000000000L;
    if (v <= -4.0e18) return -4000000000000000000L;
    return static_cast<long>(std::floor(v));
}

}  // namespace

void detail::center_span(const Box& box, double eps, long& ua, long& va, long& ub, long& vb) {
    ua = sat_ceil(box.lo.x / eps - 0.5);
    ub = sat_floor(box.hi.x / eps - 0.5);
    va = sat_ceil(box.lo.y / eps - 0.5);
    vb = sat_floor(box.hi.y / eps - 0.5);
}

std::vector<ComponentMask> components(const GraphDomain& dom, const Box& box, double eps) {
    if (eps <= 0) throw std::invalid_argument("components: eps must be positive");
    Box clip = box.intersect(neighbourhood(dom.bounding_box(), {eps, eps}));
    if (clip.empty()) return {};
    long ua, va, ub, vb;
    detail::center_span(clip, eps, ua, va, ub, vb);
    if (ua > ub || va > vb) return {};
    return detail::label_components(ua, va, ub, vb, eps, [&](Cell c) {
        return dom.contains(cell_center(c, eps));
    });
}

std::vector<ComponentMask> detail::label_components(long ua, long va, long ub, long vb, double eps,
                                                    const std::function<bool(Cell)>& inside) {
    long w = ub - ua + 1, h = vb - va + 1;

    std::vector<int> label(static_cast<size_t>(w) * static_cast<size_t>(h), -1);
    auto at = [&](long u, long v) -> int& {
        return label[static_cast<size_t>(v - va) * static_cast<size_t>(w) +
                     static_cast<size_t>(u - ua)];
    };
    for (long v = va; v <= vb; ++v)
        for (long u = ua; u <= ub; ++u)
            at(u, v) = inside({u, v}) ? 0 : -1;

    // 4-connected labeling with an explicit stack; labels start at 1.
    int next = 0;
    std::vector<Cell> stack;
    for (long v = va; v <= vb; ++v) {
        for (long u = ua; u <= ub; ++u) {
            if (at(u, v) != 0) continue;
            ++next;
            at(u, v) = next;
            stack.push_back({u, v});
            while (!stack.empty()) {
                Cell c = stack.back();
                stack.pop_back();
                const Cell nb[4] = {{c.u - 1, c.v}, {c.u + 1, c.v}, {c.u, c.v - 1}, {c.u, c.v + 1}};
                for (const Cell& m : nb) {
                    if (m.u < ua || m.u > ub || m.v < va || m.v > vb) continue;
                    if (at(m.u, m.v) == 0) {
                        at(m.u, m.v) = next;
                        stack.push_back(m);
                    }
                }
            }
        }
    }
    if (next == 0) return {};

    struct Bounds {
        long ua = 0, ub = -1, va = 0, vb = -1;
        Cell min_cell{};
        bool seen = false;
    };
    std::vector<Bounds> bounds(static_cast<size_t>(next));
    for (long v = va; v <= vb; ++v) {
        for (long u = ua; u <= ub; ++u) {
            int l = at(u, v);
            if (l <= 0) continue;
            Bounds& b = bounds[static_cast<size_t>(l - 1)];
            if (!b.seen) {
                b = {u, u, v, v, {u, v}, true};
            } else {
                b.ua = std::min(b.ua, u);
                b.ub = std::max(b.ub, u);
                b.va = std::min(b.va, v);
                b.vb = std::max(b.vb, v);
                if (u < b.min_cell.u || (u == b.min_cell.u && v < b.min_cell.v)) b.min_cell = {u, v};
            }
        }
    }
    std::vector<int> order(static_cast<size_t>(next));
    for (int l = 0; l < next; ++l) order[static_cast<size_t>(l)] = l;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Cell& ca = bounds[static_cast<size_t>(a)].min_cell;
        const Cell& cb = bounds[static_cast<size_t>(b)].min_cell;
        return ca.u != cb.u ? ca.u < cb.u : ca.v < cb.v;
    });
    std::vector<int> rank(static_cast<size_t>(next));
    for (int k = 0; k < next; ++k) rank[static_cast<size_t>(order[static_cast<size_t>(k)])] = k;

    std::vector<ComponentMask> masks;
    masks.reserve(static_cast<size_t>(next));
    for (int k = 0; k < next; ++k) {
        const Bounds& b = bounds[static_cast<size_t>(order[static_cast<size_t>(k)])];
        masks.emplace_back(k, eps, b.ua, b.va, b.ub - b.ua + 1, b.vb - b.va + 1);
    }
    for (long v = va; v <= vb; ++v)
        for (long u = ua; u <= ub; ++u) {
            int l = at(u, v);
            if (l > 0) masks[static_cast<size_t>(rank[static_cast<size_t>(l - 1)])].mark({u, v});
        }
    for (auto& m : masks) m.finalize();
    return masks;
}

const ComponentMask* component_of(const std::vector<ComponentMask>& masks, Vec2 p) {
    for (const auto& m : masks)
        if (m.covers(p)) return &m;
    return nullptr;
}

namespace {

ComponentMask containing_component(const GraphDomain& dom, const ComponentMask& m, const Box& region) {
    std::vector<ComponentMask> comps = components(dom, region, m.eps());
    Vec2 rep = cell_center(m.min_cell(), m.eps());
    for (auto& c : comps)
        if (c.covers(rep)) return std::move(c);
    throw std::runtime_error("component query: subset not contained in any component");
}

}  // namespace

ComponentMask pruned_bbox(const GraphDomain& dom, const ComponentMask& m) {
    return containing_component(dom, m, m.bbox());
}

ComponentMask local_neighbourhood(const GraphDomain& dom, const ComponentMask& m, Vec2 h) {
    return containing_component(dom, m, neighbourhood(m.bbox(), h));
}

PgmImage PgmImage::blank(long u0, long v0, long width, long height, uint8_t value) {
    PgmImage img;
    img.width = width;
    img.height = height;
    img.u0 = u0;
    img.v0 = v0;
    img.pixels.assign(static_cast<size_t>(width) * static_cast<size_t>(height), value);
    return img;
}

void PgmImage::paint(const ComponentMask& mask, uint8_t value) {
    mask.for_each_cell([&](Cell c) {
        long px = c.u - u0;
        long py = height - 1 - (c.v - v0);
        if (px < 0 || px >= width || py < 0 || py >= height) return;
        pixels[static_cast<size_t>(py) * static_cast<size_t>(width) + static_cast<size_t>(px)] = value;
    });
}

void PgmImage::paint_box(const Box& box, double eps, uint8_t value) {
    long ua = static_cast<long>(std::ceil(box.lo.x / eps - 0.5));
    long ub = static_cast<long>(std::floor(box.hi.x / eps - 0.5));
    long va = static_cast<long>(std::ceil(box.lo.y / eps - 0.5));
    long vb = static_cast<long>(std::floor(box.hi.y / eps - 0.5));
    for (long v = va; v <= vb; ++v)
        for (long u = ua; u <= ub; ++u) {
            long px = u - u0;
            long py = height - 1 - (v - v0);
            if (px < 0 || px >= width || py < 0 || py >= height) continue;
            pixels[static_cast<size_t>(py) * static_cast<size_t>(width) + static_cast<size_t>(px)] = value;
        }
}

void PgmImage::write(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("pgm: cannot open " + path);
    os << "P5\n" << width << " " << height << "\n255\n";
    os.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace cdbs
