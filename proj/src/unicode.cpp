#include "claimrank/unicode.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>

#include "unicode_tables.hpp"

namespace claimrank::uni {

namespace tables = claimrank::unicode_tables;

namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable composition/decomposition constants (UAX #15 §3.12).
constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr char32_t kHangulLCount = 19;
constexpr char32_t kHangulVCount = 21;
constexpr char32_t kHangulTCount = 28;
constexpr char32_t kHangulNCount = kHangulVCount * kHangulTCount;
constexpr char32_t kHangulSCount = kHangulLCount * kHangulNCount;

bool in_ranges(const tables::Range* begin, const tables::Range* end, char32_t cp) {
    auto it = std::upper_bound(begin, end, cp, [](char32_t v, const tables::Range& r) {
        return v < r.lo;
    });
    return it != begin && cp <= std::prev(it)->hi;
}

std::uint8_t combining_class(char32_t cp) {
    auto it = std::lower_bound(std::begin(tables::kCcc), std::end(tables::kCcc), cp,
                               [](const tables::CccEntry& e, char32_t v) { return e.cp < v; });
    return (it != std::end(tables::kCcc) && it->cp == cp) ? it->ccc : 0;
}

// Composition lookup: table pairs plus algorithmic Hangul.
char32_t compose_pair(char32_t a, char32_t b) {
    char32_t l_index = a - kHangulLBase;
    if (l_index < kHangulLCount) {
        char32_t v_index = b - kHangulVBase;
        if (v_index < kHangulVCount) {
            return kHangulSBase + (l_index * kHangulVCount + v_index) * kHangulTCount;
        }
    }
    char32_t s_index = a - kHangulSBase;
    if (s_index < kHangulSCount && s_index % kHangulTCount == 0) {
        char32_t t_index = b - kHangulTBase;
        if (t_index > 0 && t_index < kHangulTCount) {
            return a + t_index;
        }
    }
    auto it = std::lower_bound(
        std::begin(tables::kComp), std::end(tables::kComp), std::pair{a, b},
        [](const tables::CompEntry& e, const std::pair<char32_t, char32_t>& key) {
            return e.first != key.first ? e.first < key.first : e.second < key.second;
        });
    if (it != std::end(tables::kComp) && it->first == a && it->second == b) {
        return it->composed;
    }
    return 0;
}

void decompose_into(char32_t cp, std::u32string& out) {
    char32_t s_index = cp - kHangulSBase;
    if (s_index < kHangulSCount) {
        out.push_back(kHangulLBase + s_index / kHangulNCount);
        out.push_back(kHangulVBase + (s_index % kHangulNCount) / kHangulTCount);
        char32_t t = s_index % kHangulTCount;
        if (t != 0) out.push_back(kHangulTBase + t);
        return;
    }
    auto it = std::lower_bound(std::begin(tables::kDecomp), std::end(tables::kDecomp), cp,
                               [](const tables::DecompEntry& e, char32_t v) { return e.cp < v; });
    if (it != std::end(tables::kDecomp) && it->cp == cp) {
        for (std::uint8_t i = 0; i < it->len; ++i) {
            out.push_back(tables::kDecompPool[it->offset + i]);
        }
        return;
    }
    out.push_back(cp);
}

}  // namespace

bool valid_utf8(std::string_view s) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    const auto* end = p + s.size();
    while (p < end) {
        unsigned char c = *p;
        if (c < 0x80) {
            ++p;
        } else if ((c >> 5) == 0x6) {
            if (end - p < 2 || (p[1] & 0xC0) != 0x80 || c < 0xC2) return false;
            p += 2;
        } else if ((c >> 4) == 0xE) {
            if (end - p < 3 || (p[1] & 0xC0) != 0x80 || (p[2] & 0xC0) != 0x80) return false;
            char32_t cp = ((c & 0xF) << 12) | ((p[1] & 0x3F) << 6) | (p[2] & 0x3F);
            if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
            p += 3;
        } else if ((c >> 3) == 0x1E) {
            if (end - p < 4 || (p[1] & 0xC0) != 0x80 || (p[2] & 0xC0) != 0x80 ||
                (p[3] & 0xC0) != 0x80) {
                return false;
            }
            char32_t cp = ((c & 0x7) << 18) | ((p[1] & 0x3F) << 12) | ((p[2] & 0x3F) << 6) |
                          (p[3] & 0x3F);
            if (cp < 0x10000 || cp > 0x10FFFF) return false;
            p += 4;
        } else {
            return false;
        }
    }
    return true;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    const auto* end = p + s.size();
    while (p < end) {
        unsigned char c = *p;
        if (c < 0x80) {
            out.push_back(c);
            ++p;
            continue;
        }
        int len = 0;
        char32_t cp = 0;
        char32_t min = 0;
        if ((c >> 5) == 0x6) {
            len = 2;
            cp = c & 0x1F;
            min = 0x80;
        } else if ((c >> 4) == 0xE) {
            len = 3;
            cp = c & 0xF;
            min = 0x800;
        } else if ((c >> 3) == 0x1E) {
            len = 4;
            cp = c & 0x7;
            min = 0x10000;
        } else {
            out.push_back(kReplacement);
            ++p;
            continue;
        }
        if (end - p < len) {
            out.push_back(kReplacement);
            ++p;
            continue;
        }
        bool ok = true;
        for (int i = 1; i < len; ++i) {
            if ((p[i] & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (p[i] & 0x3F);
        }
        if (!ok || cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            out.push_back(kReplacement);
            ++p;
            continue;
        }
        out.push_back(cp);
        p += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

bool is_word_char(char32_t cp) {
    return in_ranges(std::begin(tables::kWordRanges), std::end(tables::kWordRanges), cp);
}

bool is_space(char32_t cp) {
    return in_ranges(std::begin(tables::kSpaceRanges), std::end(tables::kSpaceRanges), cp);
}

std::u32string to_lower(std::u32string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        auto it = std::lower_bound(std::begin(tables::kLower), std::end(tables::kLower), cp,
                                   [](const tables::LowerEntry& e, char32_t v) { return e.cp < v; });
        if (it != std::end(tables::kLower) && it->cp == cp) {
            for (std::uint8_t i = 0; i < it->len; ++i) out.push_back(it->to[i]);
        } else {
            out.push_back(cp);
        }
    }
    return out;
}

std::u32string nfc(std::u32string_view s) {
    // Decompose (canonical, full).
    std::u32string buf;
    buf.reserve(s.size());
    for (char32_t cp : s) decompose_into(cp, buf);

    // Canonical ordering: stable insertion sort of nonzero-ccc runs.
    for (std::size_t i = 1; i < buf.size(); ++i) {
        std::uint8_t cc = combining_class(buf[i]);
        if (cc == 0) continue;
        std::size_t j = i;
        char32_t cp = buf[i];
        while (j > 0 && combining_class(buf[j - 1]) > cc) {
            buf[j] = buf[j - 1];
            --j;
        }
        buf[j] = cp;
    }

    // Compose: a mark combines with the last starter when no seen mark since
    // that starter has an equal or higher combining class.
    if (buf.empty()) return buf;
    std::u32string out;
    out.reserve(buf.size());
    std::ptrdiff_t starter = -1;
    int max_cc = -1;
    for (char32_t cp : buf) {
        std::uint8_t cc = combining_class(cp);
        if (starter >= 0 && static_cast<int>(cc) > max_cc) {
            if (char32_t composed = compose_pair(out[starter], cp)) {
                out[starter] = composed;
                continue;
            }
        }
        if (cc == 0) {
            starter = static_cast<std::ptrdiff_t>(out.size());
            max_cc = -1;
        } else if (static_cast<int>(cc) > max_cc) {
            max_cc = cc;
        }
        out.push_back(cp);
    }
    return out;
}

}  // namespace claimrank::uni
