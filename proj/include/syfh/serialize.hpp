#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "syfh/synthesis.hpp"

namespace syfh {

// Artifact file layout (all integers 8-byte little-endian unless noted):
//
//   "SYFH"                      4-byte magic
//   version                     1 byte, currently 1
//   kind                        1 byte, ArtifactKind below
//   params block                N, t, chain_len, chain primes...,
//                               round(sigma*1000), w_log, pool_size
//   payload                     kind-specific, see serialize_* functions;
//                               polynomials are raw coefficient-domain
//                               residue sequences, ciphertext blocks are
//                               level, part_count, then the parts.
//
// Roundtrips are byte-exact. Zero-mask files record the stored ciphertext
// count in the params block's pool_size field (1 for the single strategy),
// so a single-strategy mask file is identical no matter how large a pool the
// parameter set configures.

enum class ArtifactKind : std::uint8_t {
    params = 0,
    secret_key = 1,
    public_key = 2,
    relin_key = 3,
    basis = 4,
    zero_mask = 5,
    ciphertext = 6,
};

using Bytes = std::vector<std::uint8_t>;

constexpr std::uint8_t kArtifactVersion = 1;
constexpr char kArtifactMagic[4] = {'S', 'Y', 'F', 'H'};

namespace detail {

inline void put_u64(Bytes& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline void put_poly(Bytes& out, const RingPoly& p) {
    if (p.domain != Domain::coeff)
        throw DomainMismatch("artifacts store coefficient-domain polynomials");
    for (u64 c : p.coeffs) put_u64(out, c);
}

inline void put_ciphertext_block(Bytes& out, const Ciphertext& ct) {
    put_u64(out, ct.level);
    put_u64(out, ct.parts.size());
    for (const auto& part : ct.parts) put_poly(out, part);
}

inline u64 sigma_millis(double sigma) { return static_cast<u64>(std::llround(sigma * 1000.0)); }

inline void put_params_block(Bytes& out, const ParamSet& ps, u64 pool_override = 0) {
    put_u64(out, ps.ring_degree);
    put_u64(out, ps.plain_modulus);
    put_u64(out, ps.q_chain.size());
    for (u64 p : ps.q_chain) put_u64(out, p);
    put_u64(out, sigma_millis(ps.sigma));
    put_u64(out, ps.w_log);
    put_u64(out, pool_override != 0 ? pool_override : ps.pool_size);
}

inline Bytes header(ArtifactKind kind, const ParamSet& ps, u64 pool_override = 0) {
    Bytes out;
    out.insert(out.end(), kArtifactMagic, kArtifactMagic + 4);
    out.push_back(kArtifactVersion);
    out.push_back(static_cast<std::uint8_t>(kind));
    put_params_block(out, ps, pool_override);
    return out;
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() {
        if (pos_ >= data_.size()) throw FormatError("artifact truncated");
        return data_[pos_++];
    }

    u64 u64le() {
        if (pos_ + 8 > data_.size()) throw FormatError("artifact truncated");
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= u64(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    RingPoly poly(std::size_t n, u64 modulus) {
        RingPoly p = RingPoly::zero(n, modulus);
        for (auto& c : p.coeffs) {
            c = u64le();
            if (c >= modulus) throw FormatError("residue out of range");
        }
        return p;
    }

    void expect_end() const {
        if (pos_ != data_.size()) throw FormatError("trailing bytes in artifact");
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

inline ParamSet read_header(Reader& r, ArtifactKind want) {
    char magic[4];
    for (char& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, kArtifactMagic, 4) != 0) throw FormatError("bad magic");
    const std::uint8_t version = r.u8();
    if (version != kArtifactVersion)
        throw UnsupportedVersion("artifact version " + std::to_string(version));
    const std::uint8_t kind = r.u8();
    if (kind != static_cast<std::uint8_t>(want)) throw FormatError("artifact kind mismatch");

    ParamSet ps;
    ps.ring_degree = r.u64le();
    ps.plain_modulus = r.u64le();
    const u64 chain_len = r.u64le();
    if (chain_len == 0 || chain_len > 64) throw FormatError("implausible chain length");
    for (u64 i = 0; i < chain_len; ++i) ps.q_chain.push_back(r.u64le());
    ps.sigma = static_cast<double>(r.u64le()) / 1000.0;
    ps.w_log = static_cast<std::uint32_t>(r.u64le());
    ps.pool_size = static_cast<std::uint32_t>(r.u64le());
    validate_params(ps);
    return ps;
}

inline Ciphertext read_ciphertext_block(Reader& r, const ParamSet& ps) {
    Ciphertext ct;
    ct.level = r.u64le();
    if (ct.level >= ps.q_chain.size()) throw FormatError("level out of range");
    const u64 nparts = r.u64le();
    if (nparts != 2 && nparts != 3) throw FormatError("part count out of range");
    const u64 modulus = ps.level_modulus(ct.level);
    for (u64 i = 0; i < nparts; ++i) ct.parts.push_back(r.poly(ps.ring_degree, modulus));
    return ct;
}

}  // namespace detail

inline Bytes serialize_params(const ParamSet& ps) {
    return detail::header(ArtifactKind::params, ps);
}

inline Bytes serialize_secret_key(const ParamSet& ps, const SecretKey& sk) {
    Bytes out = detail::header(ArtifactKind::secret_key, ps);
    detail::put_poly(out, sk.s);
    return out;
}

inline Bytes serialize_public_key(const ParamSet& ps, const PublicKey& pk) {
    Bytes out = detail::header(ArtifactKind::public_key, ps);
    detail::put_poly(out, pk.p0);
    detail::put_poly(out, pk.p1);
    return out;
}

inline Bytes serialize_relin_key(const ParamSet& ps, const RelinKey& rlk) {
    Bytes out = detail::header(ArtifactKind::relin_key, ps);
    detail::put_u64(out, rlk.digits.size());
    for (const auto& [rk0, rk1] : rlk.digits) {
        detail::put_poly(out, rk0);
        detail::put_poly(out, rk1);
    }
    return out;
}

inline Bytes serialize_ciphertext(const ParamSet& ps, const Ciphertext& ct) {
    Bytes out = detail::header(ArtifactKind::ciphertext, ps);
    detail::put_ciphertext_block(out, ct);
    return out;
}

inline Bytes serialize_basis(const ParamSet& ps, const CiphertextBasis& basis) {
    Bytes out = detail::header(ArtifactKind::basis, ps);
    detail::put_u64(out, basis.fingerprint);
    detail::put_u64(out, basis.dim);
    for (const auto& ct : basis.entries) detail::put_ciphertext_block(out, ct);
    return out;
}

inline Bytes serialize_zero_mask(const ParamSet& ps, const ZeroMask& mask) {
    Bytes out = detail::header(ArtifactKind::zero_mask, ps, mask.entries.size());
    detail::put_u64(out, mask.fingerprint);
    detail::put_u64(out, static_cast<u64>(mask.strategy));
    detail::put_u64(out, mask.entries.size());
    for (const auto& ct : mask.entries) detail::put_ciphertext_block(out, ct);
    return out;
}

inline ParamSet deserialize_params(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::params);
    r.expect_end();
    return ps;
}

inline std::pair<ParamSet, SecretKey> deserialize_secret_key(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::secret_key);
    SecretKey sk{r.poly(ps.ring_degree, ps.level_modulus(ps.top_level()))};
    r.expect_end();
    return {std::move(ps), std::move(sk)};
}

inline std::pair<ParamSet, PublicKey> deserialize_public_key(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::public_key);
    const u64 q = ps.level_modulus(ps.top_level());
    PublicKey pk;
    pk.p0 = r.poly(ps.ring_degree, q);
    pk.p1 = r.poly(ps.ring_degree, q);
    r.expect_end();
    return {std::move(ps), std::move(pk)};
}

inline std::pair<ParamSet, RelinKey> deserialize_relin_key(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::relin_key);
    const u64 q = ps.level_modulus(ps.top_level());
    RelinKey rlk;
    rlk.w_log = ps.w_log;
    const u64 count = r.u64le();
    if (count == 0 || count > 4096) throw FormatError("implausible digit count");
    for (u64 j = 0; j < count; ++j) {
        RingPoly rk0 = r.poly(ps.ring_degree, q);
        RingPoly rk1 = r.poly(ps.ring_degree, q);
        rlk.digits.emplace_back(std::move(rk0), std::move(rk1));
    }
    r.expect_end();
    return {std::move(ps), std::move(rlk)};
}

inline std::pair<ParamSet, Ciphertext> deserialize_ciphertext(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::ciphertext);
    Ciphertext ct = detail::read_ciphertext_block(r, ps);
    r.expect_end();
    return {std::move(ps), std::move(ct)};
}

inline std::pair<ParamSet, CiphertextBasis> deserialize_basis(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::basis);
    CiphertextBasis basis;
    basis.fingerprint = r.u64le();
    basis.dim = r.u64le();
    if (basis.dim == 0 || basis.dim > ps.ring_degree) throw FormatError("basis dim out of range");
    for (std::size_t i = 0; i < basis.dim; ++i)
        basis.entries.push_back(detail::read_ciphertext_block(r, ps));
    r.expect_end();
    return {std::move(ps), std::move(basis)};
}

inline std::pair<ParamSet, ZeroMask> deserialize_zero_mask(std::span<const std::uint8_t> data) {
    detail::Reader r(data);
    ParamSet ps = detail::read_header(r, ArtifactKind::zero_mask);
    ZeroMask mask;
    mask.fingerprint = r.u64le();
    const u64 strategy = r.u64le();
    if (strategy > 1) throw FormatError("unknown mask strategy");
    mask.strategy = static_cast<MaskStrategy>(strategy);
    const u64 count = r.u64le();
    if (count == 0 || count > 1u << 20) throw FormatError("implausible mask count");
    if (mask.strategy == MaskStrategy::single && count != 1)
        throw FormatError("single-strategy mask must store one ciphertext");
    for (u64 j = 0; j < count; ++j)
        mask.entries.push_back(detail::read_ciphertext_block(r, ps));
    r.expect_end();
    return {std::move(ps), std::move(mask)};
}

inline void write_file(const std::string& path, const Bytes& data) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open for writing: " + path);
    os.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(data.size()));
    if (!os) throw Error("write failed: " + path);
}

inline Bytes read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary | std::ios::ate);
    if (!is) throw Error("cannot open for reading: " + path);
    const std::streamsize size = is.tellg();
    is.seekg(0);
    Bytes data(static_cast<std::size_t>(size));
    is.read(reinterpret_cast<char*>(data.data()), size);
    if (!is) throw Error("read failed: " + path);
    return data;
}

}  // namespace syfh
