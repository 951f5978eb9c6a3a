#pragma once

// Raw field dumps: a 32-byte little-endian header followed by nx*ny*ncomp
// float64 values in row-major order (j outer, i inner, components
// interleaved).
//
//   offset  size  content
//        0     4  magic "QSLF"
//        4     4  uint32 format version (1)
//        8     4  uint32 nx
//       12     4  uint32 ny
//       16     4  uint32 component count
//       20     4  uint32 reserved (0)
//       24     8  float64 grid spacing h

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/grid.hpp"

namespace qsl {

inline constexpr std::uint32_t kSnapshotVersion = 1;

template <class T>
struct Components;
template <>
struct Components<double> {
    static constexpr int count = 1;
    static void write(const double& v, double* out) { out[0] = v; }
};
template <>
struct Components<Vec2> {
    static constexpr int count = 2;
    static void write(const Vec2& v, double* out) { out[0] = v.x; out[1] = v.y; }
};
template <>
struct Components<QTensor> {
    static constexpr int count = 5;
    static void write(const QTensor& v, double* out) {
        out[0] = v.q11; out[1] = v.q12; out[2] = v.q13; out[3] = v.q22; out[4] = v.q23;
    }
};

struct SnapshotHeader {
    std::uint32_t version = kSnapshotVersion;
    std::uint32_t nx = 0;
    std::uint32_t ny = 0;
    std::uint32_t ncomp = 0;
    double h = 0;
};

struct RawSnapshot {
    SnapshotHeader header;
    std::vector<double> values;
};

template <class T>
void write_snapshot(const std::string& path, const Field<T>& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open snapshot for writing: " + path);
    const Grid2D& g = f.grid();
    std::array<char, 32> head{};
    std::memcpy(head.data(), "QSLF", 4);
    const std::uint32_t fields[5] = {kSnapshotVersion, static_cast<std::uint32_t>(g.nx),
                                     static_cast<std::uint32_t>(g.ny),
                                     static_cast<std::uint32_t>(Components<T>::count), 0u};
    std::memcpy(head.data() + 4, fields, sizeof(fields));
    std::memcpy(head.data() + 24, &g.h, sizeof(double));
    os.write(head.data(), head.size());
    std::vector<double> buf(f.size() * Components<T>::count);
    for (std::size_t k = 0; k < f.size(); ++k) Components<T>::write(f[k], buf.data() + k * Components<T>::count);
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!os) throw std::runtime_error("short write: " + path);
}

inline RawSnapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open snapshot: " + path);
    std::array<char, 32> head{};
    is.read(head.data(), head.size());
    if (!is || std::memcmp(head.data(), "QSLF", 4) != 0) throw std::runtime_error("not a QSLF snapshot: " + path);
    std::uint32_t fields[5];
    std::memcpy(fields, head.data() + 4, sizeof(fields));
    RawSnapshot snap;
    snap.header.version = fields[0];
    snap.header.nx = fields[1];
    snap.header.ny = fields[2];
    snap.header.ncomp = fields[3];
    std::memcpy(&snap.header.h, head.data() + 24, sizeof(double));
    if (snap.header.version != kSnapshotVersion) throw std::runtime_error("unsupported snapshot version");
    snap.values.resize(static_cast<std::size_t>(snap.header.nx) * snap.header.ny * snap.header.ncomp);
    is.read(reinterpret_cast<char*>(snap.values.data()),
            static_cast<std::streamsize>(snap.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated snapshot: " + path);
    return snap;
}

}  // namespace qsl
