#pragma once

#include "k3fib/arith.hpp"

#include <cctype>
#include <functional>
#include <string>

namespace k3fib::detail {

// Recursive descent over +, -, *, ^, parentheses, rational literals and implicit products.
// A variable token is one letter followed by optional digits ("t", "u1").
template <class R>
class ExprParser {
public:
    ExprParser(std::string text, std::function<R(const std::string&)> var)
        : s_(std::move(text)), var_(std::move(var)) {}

    R parse() {
        R r = sum();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    std::string s_;
    std::size_t i_ = 0;
    std::function<R(const std::string&)> var_;

    [[noreturn]] void fail(const std::string& why) {
        throw Error("cannot parse '" + s_ + "' at " + std::to_string(i_) + ": " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_atom() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }
    R sum() {
        R r(0);
        bool first = true;
        for (;;) {
            int sign = 1;
            if (peek('+')) ++i_;
            else if (peek('-')) {
                ++i_;
                sign = -1;
            } else if (!first) break;
            R t = product();
            r = sign > 0 ? r + t : r - t;
            first = false;
        }
        return r;
    }
    R product() {
        R r = power();
        for (;;) {
            if (peek('*')) {
                ++i_;
                r = r * power();
            } else if (peek('/')) {
                ++i_;
                skip();
                std::size_t st = i_;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                if (st == i_) fail("only integer divisors are supported");
                r = r * R(Rat(1) / Rat(Int(s_.substr(st, i_ - st))));
            } else if (starts_atom()) {
                r = r * power();
            } else {
                return r;
            }
        }
    }
    R power() {
        R b = atom();
        if (peek('^')) {
            ++i_;
            skip();
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("exponent expected");
            int e = std::stoi(s_.substr(st, i_ - st));
            R r(1);
            for (int k = 0; k < e; ++k) r = r * b;
            return r;
        }
        return b;
    }
    R atom() {
        skip();
        if (i_ >= s_.size()) fail("operand expected");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            R r = sum();
            if (!peek(')')) fail("')' expected");
            ++i_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return R(Rat(Int(s_.substr(st, i_ - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t st = i_++;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return var_(s_.substr(st, i_ - st));
        }
        fail("operand expected");
    }
};

}  // namespace k3fib::detail
