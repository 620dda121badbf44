#ifndef KG1D_TOOLS_SHA1_HPP
#define KG1D_TOOLS_SHA1_HPP

// Compact SHA-1, enough for content-addressing run manifests.

#include <cstdint>
#include <cstring>
#include <string>

namespace kg1d_cli {

class Sha1 {
public:
    Sha1() { reset(); }

    void reset() {
        h_[0] = 0x67452301u;
        h_[1] = 0xEFCDAB89u;
        h_[2] = 0x98BADCFEu;
        h_[3] = 0x10325476u;
        h_[4] = 0xC3D2E1F0u;
        len_ = 0;
        buf_used_ = 0;
    }

    void update(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        len_ += n;
        while (n > 0) {
            const std::size_t take = std::min(n, sizeof(buf_) - buf_used_);
            std::memcpy(buf_ + buf_used_, p, take);
            buf_used_ += take;
            p += take;
            n -= take;
            if (buf_used_ == sizeof(buf_)) {
                process(buf_);
                buf_used_ = 0;
            }
        }
    }

    std::string hex_digest() {
        const std::uint64_t bits = len_ * 8;
        unsigned char pad[72] = {0x80};
        const std::size_t pad_len = 1 + (119 - (len_ % 64)) % 64;
        update(pad, pad_len);
        unsigned char lenb[8];
        for (int i = 0; i < 8; ++i) lenb[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(lenb, 8);

        static const char* hex = "0123456789abcdef";
        std::string out;
        out.reserve(40);
        for (std::uint32_t h : h_)
            for (int i = 28; i >= 0; i -= 4) out.push_back(hex[(h >> i) & 0xF]);
        return out;
    }

private:
    void process(const unsigned char* block) {
        std::uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

        std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
        for (int i = 0; i < 80; ++i) {
            std::uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999u;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1u;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDCu;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6u;
            }
            const std::uint32_t t = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = t;
        }
        h_[0] += a;
        h_[1] += b;
        h_[2] += c;
        h_[3] += d;
        h_[4] += e;
    }

    static std::uint32_t rol(std::uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

    std::uint32_t h_[5];
    std::uint64_t len_;
    unsigned char buf_[64];
    std::size_t buf_used_;
};

// git-style content hash: sha1("blob <len>\0<content>")
inline std::string git_blob_sha1(const std::string& content) {
    Sha1 sha;
    const std::string header = "blob " + std::to_string(content.size());
    sha.update(header.data(), header.size() + 1);  // include the NUL
    sha.update(content.data(), content.size());
    return sha.hex_digest();
}

} // namespace kg1d_cli

#endif
