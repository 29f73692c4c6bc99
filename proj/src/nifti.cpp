#include "luganopet/nifti.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace luganopet {

namespace {

#pragma pack(push, 1)
struct Nifti1Header {
    std::int32_t sizeof_hdr;
    char data_type[10];
    char db_name[18];
    std::int32_t extents;
    std::int16_t session_error;
    char regular;
    char dim_info;
    std::int16_t dim[8];
    float intent_p1, intent_p2, intent_p3;
    std::int16_t intent_code;
    std::int16_t datatype;
    std::int16_t bitpix;
    std::int16_t slice_start;
    float pixdim[8];
    float vox_offset;
    float scl_slope;
    float scl_inter;
    std::int16_t slice_end;
    char slice_code;
    char xyzt_units;
    float cal_max, cal_min;
    float slice_duration;
    float toffset;
    std::int32_t glmax, glmin;
    char descrip[80];
    char aux_file[24];
    std::int16_t qform_code;
    std::int16_t sform_code;
    float quatern_b, quatern_c, quatern_d;
    float qoffset_x, qoffset_y, qoffset_z;
    float srow_x[4], srow_y[4], srow_z[4];
    char intent_name[16];
    char magic[4];
};
#pragma pack(pop)
static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

constexpr std::int16_t DT_UINT8 = 2;
constexpr std::int16_t DT_INT16 = 4;
constexpr std::int16_t DT_INT32 = 8;
constexpr std::int16_t DT_FLOAT32 = 16;
constexpr std::int16_t DT_FLOAT64 = 64;
constexpr std::int16_t DT_INT8 = 256;
constexpr std::int16_t DT_UINT16 = 512;
constexpr std::int16_t DT_UINT32 = 768;

struct GzFile {
    gzFile f = nullptr;
    explicit GzFile(const std::string& path, const char* mode) {
        f = gzopen(path.c_str(), mode);
        if (!f) throw std::runtime_error("cannot open NIfTI file: " + path);
    }
    ~GzFile() { if (f) gzclose(f); }
    GzFile(const GzFile&) = delete;
    GzFile& operator=(const GzFile&) = delete;

    void read(void* buf, std::size_t n, const std::string& path) {
        if (gzread(f, buf, static_cast<unsigned>(n)) != static_cast<int>(n))
            throw std::runtime_error("truncated NIfTI file: " + path);
    }
    void write(const void* buf, std::size_t n, const std::string& path) {
        if (gzwrite(f, buf, static_cast<unsigned>(n)) != static_cast<int>(n))
            throw std::runtime_error("failed writing NIfTI file: " + path);
    }
};

template <typename T> void bswap(T& v) {
    auto* p = reinterpret_cast<unsigned char*>(&v);
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(p[i], p[sizeof(T) - 1 - i]);
}

void swap_header(Nifti1Header& h) {
    bswap(h.sizeof_hdr);
    for (auto& d : h.dim) bswap(d);
    bswap(h.datatype);
    bswap(h.bitpix);
    for (auto& p : h.pixdim) bswap(p);
    bswap(h.vox_offset);
    bswap(h.scl_slope);
    bswap(h.scl_inter);
    bswap(h.qform_code);
    bswap(h.sform_code);
    bswap(h.quatern_b); bswap(h.quatern_c); bswap(h.quatern_d);
    bswap(h.qoffset_x); bswap(h.qoffset_y); bswap(h.qoffset_z);
    for (auto& v : h.srow_x) bswap(v);
    for (auto& v : h.srow_y) bswap(v);
    for (auto& v : h.srow_z) bswap(v);
}

// 3x4 affine: world = M * (i,j,k,1)
struct Affine {
    double m[3][4];
};

Affine affine_from_header(const Nifti1Header& h) {
    Affine a{};
    if (h.sform_code > 0) {
        for (int c = 0; c < 4; ++c) {
            a.m[0][c] = h.srow_x[c];
            a.m[1][c] = h.srow_y[c];
            a.m[2][c] = h.srow_z[c];
        }
        return a;
    }
    if (h.qform_code > 0) {
        const double b = h.quatern_b, c = h.quatern_c, d = h.quatern_d;
        double aa = 1.0 - (b * b + c * c + d * d);
        aa = aa <= 0.0 ? 0.0 : std::sqrt(aa);
        const double qfac = (h.pixdim[0] < 0.0f) ? -1.0 : 1.0;
        const double R[3][3] = {
            {aa * aa + b * b - c * c - d * d, 2 * (b * c - aa * d), 2 * (b * d + aa * c)},
            {2 * (b * c + aa * d), aa * aa + c * c - b * b - d * d, 2 * (c * d - aa * b)},
            {2 * (b * d - aa * c), 2 * (c * d + aa * b), aa * aa + d * d - b * b - c * c}};
        const double sp[3] = {h.pixdim[1], h.pixdim[2], h.pixdim[3]};
        for (int r = 0; r < 3; ++r) {
            a.m[r][0] = R[r][0] * sp[0];
            a.m[r][1] = R[r][1] * sp[1];
            a.m[r][2] = R[r][2] * sp[2] * qfac;
        }
        a.m[0][3] = h.qoffset_x;
        a.m[1][3] = h.qoffset_y;
        a.m[2][3] = h.qoffset_z;
        return a;
    }
    for (int r = 0; r < 3; ++r) a.m[r][r] = h.pixdim[r + 1] > 0 ? h.pixdim[r + 1] : 1.0;
    return a;
}

Grid3 grid_from_affine(const Nifti1Header& h, const Affine& a, const std::string& path) {
    Grid3 g;
    g.dims = {h.dim[1], h.dim[2], h.dim[3]};
    g.origin = {a.m[0][3], a.m[1][3], a.m[2][3]};

    bool used[3] = {false, false, false};
    for (int axis = 0; axis < 3; ++axis) {
        const double col[3] = {a.m[0][axis], a.m[1][axis], a.m[2][axis]};
        const double len = std::sqrt(col[0] * col[0] + col[1] * col[1] + col[2] * col[2]);
        if (!(len > 0.0))
            throw std::runtime_error("NIfTI affine has a zero-length axis: " + path);
        int w = 0;
        for (int r = 1; r < 3; ++r)
            if (std::abs(col[r]) > std::abs(col[w])) w = r;
        const double off_axis = std::sqrt(std::max(0.0, len * len - col[w] * col[w]));
        if (off_axis > 1e-3 * len || used[w])
            throw std::runtime_error(
                "NIfTI affine is non-orthogonal or oblique; only axis-aligned "
                "orientations are supported: " + path);
        used[w] = true;
        g.spacing[axis] = len;
        const bool pos = col[w] > 0.0;
        if (w == 0) g.axes[axis] = pos ? AxisCode::R : AxisCode::L;
        else if (w == 1) g.axes[axis] = pos ? AxisCode::A : AxisCode::P;
        else g.axes[axis] = pos ? AxisCode::S : AxisCode::I;
    }
    g.validate();
    return g;
}

struct RawVolume {
    Grid3 grid;
    std::vector<double> data;
};

RawVolume read_raw(const std::string& path) {
    GzFile in(path, "rb");
    Nifti1Header h{};
    in.read(&h, sizeof(h), path);

    bool swapped = false;
    if (h.sizeof_hdr != 348) {
        swap_header(h);
        swapped = true;
        if (h.sizeof_hdr != 348)
            throw std::runtime_error("not a NIfTI-1 file (bad header size): " + path);
    }
    if (std::strncmp(h.magic, "n+1", 3) != 0) {
        if (std::strncmp(h.magic, "ni1", 3) == 0)
            throw std::runtime_error("two-file NIfTI (.hdr/.img) is not supported: " + path);
        throw std::runtime_error("not a single-file NIfTI-1 (bad magic): " + path);
    }
    const int nd = h.dim[0];
    if (nd < 3 || nd > 7)
        throw std::runtime_error("unsupported NIfTI dimensionality: " + path);
    for (int d = 4; d <= nd; ++d)
        if (h.dim[d] > 1)
            throw std::runtime_error("only 3D NIfTI volumes are supported: " + path);
    if (h.dim[1] < 1 || h.dim[2] < 1 || h.dim[3] < 1)
        throw std::runtime_error("invalid NIfTI dims: " + path);

    RawVolume rv;
    rv.grid = grid_from_affine(h, affine_from_header(h), path);

    const std::int64_t n = rv.grid.voxel_count();
    const int bytes = h.bitpix / 8;
    if (bytes <= 0) throw std::runtime_error("invalid NIfTI bitpix: " + path);

    const std::int64_t offset = static_cast<std::int64_t>(h.vox_offset);
    if (offset < 348) throw std::runtime_error("invalid NIfTI vox_offset: " + path);
    std::vector<char> skip(static_cast<std::size_t>(offset - 348));
    if (!skip.empty()) in.read(skip.data(), skip.size(), path);

    std::vector<char> buf(static_cast<std::size_t>(n) * bytes);
    in.read(buf.data(), buf.size(), path);

    rv.data.resize(n);
    auto convert = [&](auto tag) {
        using T = decltype(tag);
        const T* p = reinterpret_cast<const T*>(buf.data());
        for (std::int64_t i = 0; i < n; ++i) {
            T v = p[i];
            if (swapped && sizeof(T) > 1) bswap(v);
            rv.data[i] = static_cast<double>(v);
        }
    };
    switch (h.datatype) {
        case DT_UINT8: convert(std::uint8_t{}); break;
        case DT_INT8: convert(std::int8_t{}); break;
        case DT_INT16: convert(std::int16_t{}); break;
        case DT_UINT16: convert(std::uint16_t{}); break;
        case DT_INT32: convert(std::int32_t{}); break;
        case DT_UINT32: convert(std::uint32_t{}); break;
        case DT_FLOAT32: convert(float{}); break;
        case DT_FLOAT64: convert(double{}); break;
        default:
            throw std::runtime_error("unsupported NIfTI datatype " +
                                     std::to_string(h.datatype) + ": " + path);
    }

    const bool has_scale = h.scl_slope != 0.0f && !(h.scl_slope == 1.0f && h.scl_inter == 0.0f);
    if (has_scale)
        for (auto& v : rv.data) v = v * h.scl_slope + h.scl_inter;
    return rv;
}

Nifti1Header make_header(const Grid3& g, std::int16_t datatype, std::int16_t bitpix) {
    Nifti1Header h{};
    h.sizeof_hdr = 348;
    h.regular = 'r';
    h.dim[0] = 3;
    h.dim[1] = static_cast<std::int16_t>(g.dims[0]);
    h.dim[2] = static_cast<std::int16_t>(g.dims[1]);
    h.dim[3] = static_cast<std::int16_t>(g.dims[2]);
    for (int d = 4; d < 8; ++d) h.dim[d] = 1;
    h.datatype = datatype;
    h.bitpix = bitpix;
    h.pixdim[0] = 1.0f;
    for (int a = 0; a < 3; ++a) h.pixdim[a + 1] = static_cast<float>(g.spacing[a]);
    h.vox_offset = 352.0f;
    h.scl_slope = 1.0f;
    h.scl_inter = 0.0f;
    h.xyzt_units = 2;  // NIFTI_UNITS_MM
    h.sform_code = 1;  // scanner-anatomical
    h.qform_code = 0;
    float* rows[3] = {h.srow_x, h.srow_y, h.srow_z};
    for (int a = 0; a < 3; ++a) {
        const int w = world_axis(g.axes[a]);
        rows[w][a] = static_cast<float>(axis_sign(g.axes[a]) * g.spacing[a]);
    }
    for (int w = 0; w < 3; ++w) rows[w][3] = static_cast<float>(g.origin[w]);
    std::memcpy(h.magic, "n+1", 4);
    return h;
}

bool ends_with_gz(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

template <typename T>
void write_file(const Grid3& g, std::int16_t datatype, const std::vector<T>& data,
                const std::string& path) {
    g.validate();
    for (int a = 0; a < 3; ++a)
        if (g.dims[a] > 0x7fff)
            throw std::runtime_error("grid too large for NIfTI-1 int16 dims: " + path);
    const Nifti1Header h = make_header(g, datatype, static_cast<std::int16_t>(sizeof(T) * 8));
    // "wb" gzip-compresses, "wbT" stores transparently for plain .nii
    GzFile out(path, ends_with_gz(path) ? "wb" : "wbT");
    out.write(&h, sizeof(h), path);
    const char pad[4] = {0, 0, 0, 0};  // no header extensions
    out.write(pad, 4, path);
    out.write(data.data(), data.size() * sizeof(T), path);
}

}  // namespace

ScalarVolume read_scalar_nifti(const std::string& path, ScalarKind kind) {
    RawVolume rv = read_raw(path);
    ScalarVolume out;
    out.grid = rv.grid;
    out.kind = kind;
    out.values.resize(rv.data.size());
    for (std::size_t i = 0; i < rv.data.size(); ++i)
        out.values[i] = static_cast<float>(rv.data[i]);
    return out;
}

LabelVolume read_label_nifti(const std::string& path) {
    RawVolume rv = read_raw(path);
    LabelVolume out;
    out.grid = rv.grid;
    out.labels.resize(rv.data.size());
    for (std::size_t i = 0; i < rv.data.size(); ++i) {
        const double v = rv.data[i];
        const double r = std::nearbyint(v);
        if (!std::isfinite(v) || std::abs(v - r) > 1e-6 || r < 0)
            throw std::runtime_error("label NIfTI contains non-integer or negative values: " + path);
        out.labels[i] = static_cast<std::int32_t>(r);
    }
    return out;
}

void write_nifti(const ScalarVolume& vol, const std::string& path) {
    write_file(vol.grid, DT_FLOAT32, vol.values, path);
}

void write_nifti(const LabelVolume& vol, const std::string& path) {
    write_file(vol.grid, DT_INT32, vol.labels, path);
}

void write_label_dictionary(const LabelVolume& vol, const std::string& json_path) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [id, name] : vol.names) j[std::to_string(id)] = name;
    std::ofstream f(json_path);
    if (!f) throw std::runtime_error("cannot write label dictionary: " + json_path);
    f << j.dump(2) << "\n";
}

void read_label_dictionary(LabelVolume& vol, const std::string& json_path) {
    std::ifstream f(json_path);
    if (!f) throw std::runtime_error("cannot read label dictionary: " + json_path);
    nlohmann::json j;
    f >> j;
    for (auto it = j.begin(); it != j.end(); ++it)
        vol.names[std::stoi(it.key())] = it.value().get<std::string>();
}

}  // namespace luganopet
