#include "adslf/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace adslf {

std::array<double, 3> project_r3(const Mat2& m) {
    return {(m.a21 - m.a12) / 2, (m.a21 + m.a12) / 2, (m.a22 - m.a11) / 2};
}

ExportBundle ExportBundle::harmonic_only(const GridSpec& g, const SlField& nu) {
    ExportBundle b;
    b.g = g;
    b.nu = nu;
    b.has_surface = false;
    const size_t nn = (size_t)g.n * g.n;
    b.kp1.assign(nn, std::numeric_limits<double>::quiet_NaN());
    b.H.assign(nn, std::numeric_limits<double>::quiet_NaN());
    b.causal.assign(nn, 'n');
    b.mask = MaskField(g);
    for (auto& m : b.mask.a) m = 1;
    return b;
}

ExportBundle ExportBundle::from_surface(const SurfaceField& sf, const SurfaceGeometry& geom) {
    ExportBundle b;
    b.g = sf.g;
    b.nu = sf.nu;
    b.has_surface = true;
    b.f = sf.f;
    b.mask = sf.mask;
    const size_t nn = (size_t)sf.g.n * sf.g.n;
    b.kp1.assign(nn, std::numeric_limits<double>::quiet_NaN());
    b.H.assign(nn, std::numeric_limits<double>::quiet_NaN());
    b.causal.assign(nn, 'n');
    for (size_t k = 0; k < nn; ++k) {
        b.causal[k] = (char)geom.causal[k];
        if (geom.valid[k]) {
            b.kp1[k] = geom.Kext[k];
            b.H[k] = geom.H[k];
        }
    }
    return b;
}

namespace {

void put_num(std::string& out, double v) {
    char buf[40];
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

double get_num(const char* s) {
    if (std::strncmp(s, "nan", 3) == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::strtod(s, nullptr);
}

}  // namespace

void export_csv(const ExportBundle& b, const std::string& path) {
    std::string out;
    out.reserve((size_t)b.g.n * b.g.n * 160);
    out += "x,y,nu11,nu12,nu21,nu22,f11,f12,f21,f22,Kp1,H,causal\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j < b.g.n; ++j)
        for (int i = 0; i < b.g.n; ++i) {
            const size_t k = (size_t)j * b.g.n + i;
            put_num(out, b.g.coord(i));
            out += ',';
            put_num(out, b.g.coord(j));
            const Mat2 nu = to_mat(b.nu.at(i, j));
            for (double v : {nu.a11, nu.a12, nu.a21, nu.a22}) {
                out += ',';
                put_num(out, v);
            }
            const Mat2 f = b.has_surface ? b.f.at(i, j) : Mat2{nan, nan, nan, nan};
            const bool masked_out = b.has_surface && !b.mask.a[k];
            for (double v : {f.a11, f.a12, f.a21, f.a22}) {
                out += ',';
                put_num(out, masked_out ? nan : v);
            }
            out += ',';
            put_num(out, b.kp1[k]);
            out += ',';
            put_num(out, b.H[k]);
            out += ',';
            out += b.causal[k];
            out += '\n';
        }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("export_csv: cannot open " + path);
    f << out;
    if (!f) throw IoError("export_csv: write failed for " + path);
}

ExportBundle import_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("import_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("import_csv: empty file");
    if (line.rfind("x,y,nu11", 0) != 0) throw IoError("import_csv: unexpected header");

    struct Row {
        double x, y;
        double v[12];
        char causal;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Row r{};
        const char* p = line.c_str();
        double vals[12];
        r.x = get_num(p);
        for (int k = 0; k < 12; ++k) {
            p = std::strchr(p, ',');
            if (!p) throw IoError("import_csv: short row");
            ++p;
            vals[k] = get_num(p);
        }
        const char* last = std::strrchr(line.c_str(), ',');
        r.causal = last && last[1] ? last[1] : 'n';
        r.y = vals[0];
        std::memcpy(r.v, vals + 1, sizeof(double) * 11);
        r.v[11] = 0;
        rows.push_back(r);
    }
    const int n = (int)std::lround(std::sqrt((double)rows.size()));
    if ((size_t)n * n != rows.size()) throw IoError("import_csv: not a square grid");

    ExportBundle b;
    b.g = GridSpec{rows.front().x, rows.back().x, n};
    b.nu = SlField(b.g);
    b.f = Mat2Field(b.g);
    b.mask = MaskField(b.g);
    const size_t nn = rows.size();
    b.kp1.assign(nn, 0);
    b.H.assign(nn, 0);
    b.causal.assign(nn, 'n');
    b.has_surface = false;
    for (size_t k = 0; k < nn; ++k) {
        const Row& r = rows[k];
        const int i = (int)(k % n), j = (int)(k / n);
        b.nu.at(i, j) = sl_part(Mat2{r.v[0], r.v[1], r.v[2], r.v[3]});
        const Mat2 f{r.v[4], r.v[5], r.v[6], r.v[7]};
        b.f.at(i, j) = f;
        const bool have_f = !std::isnan(f.a11);
        b.mask.a[k] = have_f ? 1 : 0;
        if (have_f) b.has_surface = true;
        b.kp1[k] = r.v[8];
        b.H[k] = r.v[9];
        b.causal[k] = r.causal;
    }
    return b;
}

void export_obj(const ExportBundle& b, const std::string& path) {
    std::string out;
    out.reserve((size_t)b.g.n * b.g.n * 48);
    const int n = b.g.n;
    std::vector<int> vid((size_t)n * n, 0);
    int next = 1;
    out += "o surface\n";
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const size_t k = (size_t)j * n + i;
            if (!b.mask.a[k]) continue;
            const auto p = project_r3(b.has_surface ? b.f.at(i, j) : to_mat(b.nu.at(i, j)));
            char buf[128];
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p[0], p[1], p[2]);
            out += buf;
            vid[k] = next++;
        }
    for (int j = 0; j + 1 < n; ++j)
        for (int i = 0; i + 1 < n; ++i) {
            const int v00 = vid[(size_t)j * n + i], v10 = vid[(size_t)j * n + i + 1];
            const int v11 = vid[(size_t)(j + 1) * n + i + 1], v01 = vid[(size_t)(j + 1) * n + i];
            if (v00 && v10 && v11 && v01) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "f %d %d %d %d\n", v00, v10, v11, v01);
                out += buf;
            }
        }
    if (!b.curve.empty()) {
        out += "o initial_curve\n";
        std::vector<int> cid(b.curve.size());
        for (size_t k = 0; k < b.curve.size(); ++k) {
            const auto p = project_r3(b.curve[k]);
            char buf[128];
            std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p[0], p[1], p[2]);
            out += buf;
            cid[k] = next++;
        }
        for (size_t k = 0; k + 1 < b.curve.size(); ++k) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "l %d %d\n", cid[k], cid[k + 1]);
            out += buf;
        }
    }
    // mask boundary: segments between adjacent surviving nodes that touch a
    // masked neighbour
    {
        auto boundary = [&](int i, int j) {
            const size_t k = (size_t)j * n + i;
            if (!b.mask.a[k]) return false;
            const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                const int ii = i + di[d], jj = j + dj[d];
                if (ii >= 0 && jj >= 0 && ii < n && jj < n && !b.mask.a[(size_t)jj * n + ii])
                    return true;
            }
            return false;
        };
        std::string seg;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (!boundary(i, j)) continue;
                if (i + 1 < n && boundary(i + 1, j)) {
                    char buf[48];
                    std::snprintf(buf, sizeof buf, "l %d %d\n", vid[(size_t)j * n + i],
                                  vid[(size_t)j * n + i + 1]);
                    seg += buf;
                }
                if (j + 1 < n && boundary(i, j + 1)) {
                    char buf[48];
                    std::snprintf(buf, sizeof buf, "l %d %d\n", vid[(size_t)j * n + i],
                                  vid[(size_t)(j + 1) * n + i]);
                    seg += buf;
                }
            }
        if (!seg.empty()) {
            out += "o mask_boundary\n";
            out += seg;
        }
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("export_obj: cannot open " + path);
    f << out;
    if (!f) throw IoError("export_obj: write failed for " + path);
}

CurveCsv read_curve_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_curve_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("read_curve_csv: empty file");
    if (line.rfind("t,f11", 0) != 0) throw IoError("read_curve_csv: unexpected header");
    CurveCsv c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const char* p = line.c_str();
        double v[9];
        v[0] = get_num(p);
        for (int k = 1; k < 9; ++k) {
            p = std::strchr(p, ',');
            if (!p) throw IoError("read_curve_csv: short row");
            ++p;
            v[k] = get_num(p);
        }
        c.t.push_back(v[0]);
        c.f.push_back({v[1], v[2], v[3], v[4]});
        c.nu.push_back(sl_part(Mat2{v[5], v[6], v[7], v[8]}));
    }
    if (c.t.size() < 9) throw IoError("read_curve_csv: need at least 9 samples");
    return c;
}

void write_curve_csv(const CurveCsv& c, const std::string& path) {
    std::string out = "t,f11,f12,f21,f22,nu11,nu12,nu21,nu22\n";
    for (size_t k = 0; k < c.t.size(); ++k) {
        put_num(out, c.t[k]);
        const Mat2 nu = to_mat(c.nu[k]);
        for (double v : {c.f[k].a11, c.f[k].a12, c.f[k].a21, c.f[k].a22, nu.a11, nu.a12, nu.a21,
                         nu.a22}) {
            out += ',';
            put_num(out, v);
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("write_curve_csv: cannot open " + path);
    f << out;
    if (!f) throw IoError("write_curve_csv: write failed for " + path);
}

}  // namespace adslf
