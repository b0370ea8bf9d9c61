#pragma once

// Recursive-descent parser for the ASCII space grammar:
//
//   space := term ( ("x" | "*") term )*
//   term  := "S^" ODD | "SU(" N ")" | "Sp(" N ")" | "Spin(" N ")"
//          | "G2" | "F4" | "E6" | "E7" | "E8"
//          | "B(" ODD ("," ODD)+ ")" | "B2(3,11)" | "K3" | "K5" | "W"
//
// Whitespace is ignored everywhere.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "homexp/space.hpp"

namespace homexp {
namespace detail {

class SpaceParser {
  public:
    explicit SpaceParser(std::string_view src) : src_(src) {}

    Space parse() {
        std::vector<Space> factors;
        factors.push_back(term());
        skip_ws();
        while (pos_ < src_.size() && (src_[pos_] == 'x' || src_[pos_] == '*')) {
            ++pos_;
            factors.push_back(term());
            skip_ws();
        }
        if (pos_ != src_.size()) fail("unexpected trailing input");
        if (factors.size() == 1) return std::move(factors.front());
        return Space{Product{std::move(factors)}};
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool try_consume(std::string_view token) {
        if (src_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    Int number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected a number");
        if (pos_ - start > 9) fail("number too large");
        Int v = 0;
        for (std::size_t i = start; i < pos_; ++i) v = v * 10 + (src_[i] - '0');
        return v;
    }

    Int odd_dim() {
        skip_ws();
        std::size_t at = pos_;
        Int d = number();
        if (d < 3 || d % 2 == 0) throw ParseError("dimension must be odd and >= 3", at);
        return d;
    }

    std::vector<Int> dim_list() {
        std::vector<Int> dims;
        expect('(');
        dims.push_back(odd_dim());
        skip_ws();
        while (pos_ < src_.size() && src_[pos_] == ',') {
            ++pos_;
            std::size_t at = pos_;
            Int d = odd_dim();
            if (d <= dims.back()) throw ParseError("bundle dimensions must be strictly increasing", at);
            dims.push_back(d);
        }
        expect(')');
        return dims;
    }

    Space term() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected a space term");

        if (try_consume("Spin")) return group(GroupSeries::Spin, 3);
        if (try_consume("Sp")) return group(GroupSeries::Sp, 1);
        if (try_consume("SU")) return group(GroupSeries::SU, 1);
        if (try_consume("S^")) return Space{Sphere{odd_dim()}};
        if (try_consume("B2")) {
            std::size_t at = pos_;
            std::vector<Int> dims = dim_list();
            if (dims != std::vector<Int>{3, 11})
                throw ParseError("the only alpha_2 bundle supported is B2(3,11)", at);
            return Space{Bundle{std::move(dims), 2}};
        }
        if (try_consume("B")) {
            std::size_t at = pos_;
            std::vector<Int> dims = dim_list();
            if (dims.size() < 2) throw ParseError("bundle needs at least two cells", at);
            return Space{Bundle{std::move(dims), 1}};
        }
        if (try_consume("G2")) return Space{GroupAtom{GroupSeries::G2, 0}};
        if (try_consume("F4")) return Space{GroupAtom{GroupSeries::F4, 0}};
        if (try_consume("E6")) return Space{GroupAtom{GroupSeries::E6, 0}};
        if (try_consume("E7")) return Space{GroupAtom{GroupSeries::E7, 0}};
        if (try_consume("E8")) return Space{GroupAtom{GroupSeries::E8, 0}};
        if (try_consume("K3")) return Space{ExoticAtom{ExoticName::K3}};
        if (try_consume("K5")) return Space{ExoticAtom{ExoticName::K5}};
        if (try_consume("W")) return Space{ExoticAtom{ExoticName::W}};

        fail("unrecognized space term");
    }

    Space group(GroupSeries series, Int min_rank) {
        expect('(');
        std::size_t at = pos_;
        Int n = number();
        expect(')');
        if (n < min_rank)
            throw ParseError(series_name(series) + "(n) requires n >= " + std::to_string(min_rank), at);
        return Space{GroupAtom{series, n}};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a space expression into canonical (flat, validated) form.
inline Space parse_space(std::string_view text) {
    Space s = detail::SpaceParser(text).parse();
    validate_space(s);
    return s;
}

}  // namespace homexp
