#include "luganopet/rules.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <set>

namespace luganopet {

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

constexpr int kMaxDepth = 32;

struct Token {
    enum class Type { Ident, Number, LBrace, RBrace, LParen, RParen, Comma, Pipe, Amp, Minus, End };
    Type type;
    std::string text;
    double number = 0.0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : s_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= s_.size()) {
            t.type = Token::Type::End;
            return t;
        }
        const char c = s_[pos_];
        switch (c) {
            case '{': advance(); t.type = Token::Type::LBrace; return t;
            case '}': advance(); t.type = Token::Type::RBrace; return t;
            case '(': advance(); t.type = Token::Type::LParen; return t;
            case ')': advance(); t.type = Token::Type::RParen; return t;
            case ',': advance(); t.type = Token::Type::Comma; return t;
            case '|': advance(); t.type = Token::Type::Pipe; return t;
            case '&': advance(); t.type = Token::Type::Amp; return t;
        }
        if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            // '-' is subtraction unless it starts a number; numbers appear only
            // after '(' or ',' in this grammar, which callers disambiguate by
            // requesting a number token explicitly. Here: lone '-' is Minus.
            if (c == '-' && !(pos_ + 1 < s_.size() &&
                              (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
                               s_[pos_ + 1] == '.'))) {
                advance();
                t.type = Token::Type::Minus;
                return t;
            }
            std::size_t start = pos_;
            if (c == '-' || c == '+') advance();
            bool any = false, dot = false;
            while (pos_ < s_.size()) {
                const char d = s_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d))) { any = true; advance(); }
                else if (d == '.' && !dot) { dot = true; advance(); }
                else break;
            }
            if (!any) throw ParseError("malformed number", t.line, t.col);
            t.type = Token::Type::Number;
            t.text = std::string(s_.substr(start, pos_ - start));
            try {
                t.number = std::stod(t.text);
            } catch (const std::exception&) {
                throw ParseError("number out of range", t.line, t.col);
            }
            if (!std::isfinite(t.number))
                throw ParseError("number out of range", t.line, t.col);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                advance();
            t.type = Token::Type::Ident;
            t.text = std::string(s_.substr(start, pos_ - start));
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }

private:
    void skip_ws() {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { bump(); }

    RuleSet parse() {
        RuleSet rs;
        std::set<std::string> inventory;
        while (cur_.type != Token::Type::End) {
            expect_ident();
            if (cur_.text == "landmarks") {
                bump();
                expect(Token::Type::LBrace, "'{'");
                while (cur_.type == Token::Type::Ident) {
                    inventory.insert(cur_.text);
                    bump();
                }
                expect(Token::Type::RBrace, "'}'");
            } else if (cur_.text == "region") {
                parse_region(rs);
            } else {
                throw ParseError("expected 'region' or 'landmarks', got '" + cur_.text + "'",
                                 cur_.line, cur_.col);
            }
        }
        rs.landmark_inventory.assign(inventory.begin(), inventory.end());

        for (RegionId r : all_regions())
            if (!rs.rules.count(r))
                throw ParseError("rule file is missing region " + std::string(region_name(r)), 1, 1);

        if (!inventory.empty()) {
            for (const auto& [name, line, col] : landmark_refs_)
                if (!inventory.count(name))
                    throw ParseError("landmark '" + name + "' is not in the declared inventory",
                                     line, col);
        }
        return rs;
    }

private:
    void bump() { cur_ = lex_.next(); }

    void expect(Token::Type t, const char* what) {
        if (cur_.type != t)
            throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
        bump();
    }

    void expect_ident() {
        if (cur_.type != Token::Type::Ident)
            throw ParseError("expected an identifier", cur_.line, cur_.col);
    }

    std::string take_ident(const char* what) {
        if (cur_.type != Token::Type::Ident)
            throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
        std::string s = cur_.text;
        bump();
        return s;
    }

    void parse_region(RuleSet& rs) {
        bump();  // 'region'
        const Token name_tok = cur_;
        const std::string name = take_ident("a region name");
        const auto region = region_from_name(name);
        if (!region)
            throw ParseError("unknown region name '" + name + "'", name_tok.line, name_tok.col);
        if (rs.rules.count(*region))
            throw ParseError("duplicate rule for region " + name, name_tok.line, name_tok.col);

        expect(Token::Type::LBrace, "'{'");
        RegionRule rule;
        rule.region = *region;
        bool have_priority = false, have_expr = false;
        while (cur_.type != Token::Type::RBrace) {
            const Token key_tok = cur_;
            const std::string key = take_ident("'priority' or 'expr'");
            if (key == "priority") {
                if (cur_.type != Token::Type::Number)
                    throw ParseError("expected a number after 'priority'", cur_.line, cur_.col);
                if (cur_.number < -1e6 || cur_.number > 1e6)
                    throw ParseError("priority out of range", cur_.line, cur_.col);
                rule.priority = static_cast<int>(cur_.number);
                bump();
                have_priority = true;
            } else if (key == "expr") {
                rule.expr = parse_expr(0);
                have_expr = true;
            } else {
                throw ParseError("unknown region field '" + key + "'", key_tok.line, key_tok.col);
            }
        }
        expect(Token::Type::RBrace, "'}'");
        if (!have_priority)
            throw ParseError("region " + name + " has no priority", name_tok.line, name_tok.col);
        if (!have_expr)
            throw ParseError("region " + name + " has no expr", name_tok.line, name_tok.col);
        rs.rules.emplace(*region, std::move(rule));
    }

    // expr := term { '|' term } ; term := diff { '&' diff } ; diff := atom { '-' atom }
    std::unique_ptr<RuleExpr> parse_expr(int depth) {
        check_depth(depth);
        auto lhs = parse_term(depth + 1);
        while (cur_.type == Token::Type::Pipe) {
            bump();
            lhs = make_binary(RuleExpr::Kind::Union, std::move(lhs), parse_term(depth + 1));
        }
        return lhs;
    }

    std::unique_ptr<RuleExpr> parse_term(int depth) {
        check_depth(depth);
        auto lhs = parse_diff(depth + 1);
        while (cur_.type == Token::Type::Amp) {
            bump();
            lhs = make_binary(RuleExpr::Kind::Intersect, std::move(lhs), parse_diff(depth + 1));
        }
        return lhs;
    }

    std::unique_ptr<RuleExpr> parse_diff(int depth) {
        check_depth(depth);
        auto lhs = parse_atom(depth + 1);
        while (cur_.type == Token::Type::Minus) {
            bump();
            lhs = make_binary(RuleExpr::Kind::Subtract, std::move(lhs), parse_atom(depth + 1));
        }
        return lhs;
    }

    std::unique_ptr<RuleExpr> parse_atom(int depth) {
        check_depth(depth);
        if (cur_.type == Token::Type::LParen) {
            bump();
            auto e = parse_expr(depth + 1);
            expect(Token::Type::RParen, "')'");
            return e;
        }
        const Token tok = cur_;
        const std::string ident = take_ident("a landmark or operator");
        if (cur_.type != Token::Type::LParen)
            return make_landmark(ident, tok);

        bump();  // '('
        auto node = std::make_unique<RuleExpr>();
        if (ident == "landmark") {
            const Token arg = cur_;
            auto e = make_landmark(take_ident("a landmark name"), arg);
            expect(Token::Type::RParen, "')'");
            return e;
        }
        if (ident == "dilate") {
            node->kind = RuleExpr::Kind::Dilate;
            node->lhs = parse_expr(depth + 1);
            expect(Token::Type::Comma, "','");
            if (cur_.type != Token::Type::Number)
                throw ParseError("expected a dilation radius in mm", cur_.line, cur_.col);
            node->radius_mm = cur_.number;
            if (node->radius_mm < 0.0)
                throw ParseError("dilation radius must be >= 0", cur_.line, cur_.col);
            bump();
            expect(Token::Type::RParen, "')'");
            return node;
        }
        if (auto dir = half_space_dir(ident)) {
            node->kind = RuleExpr::Kind::HalfSpace;
            node->dir = *dir;
            const Token arg = cur_;
            node->name = take_ident("a landmark name");
            note_landmark(node->name, arg);
            if (cur_.type == Token::Type::Comma) {
                bump();
                const Token mode_tok = cur_;
                const std::string mode = take_ident("'centroid' or 'face'");
                if (mode == "centroid") node->ref = HalfSpaceRef::Centroid;
                else if (mode == "face") node->ref = HalfSpaceRef::Face;
                else throw ParseError("unknown half-space mode '" + mode + "'",
                                      mode_tok.line, mode_tok.col);
            }
            expect(Token::Type::RParen, "')'");
            return node;
        }
        if (ident == "slab_between") {
            node->kind = RuleExpr::Kind::SlabBetween;
            Token arg = cur_;
            node->name = take_ident("a landmark name");
            note_landmark(node->name, arg);
            expect(Token::Type::Comma, "','");
            arg = cur_;
            node->name2 = take_ident("a landmark name");
            note_landmark(node->name2, arg);
            expect(Token::Type::RParen, "')'");
            return node;
        }
        if (ident == "left_half" || ident == "right_half") {
            node->kind = RuleExpr::Kind::MidlineSplit;
            node->left_side = ident == "left_half";
            const Token arg = cur_;
            node->name = take_ident("a midline landmark name");
            note_landmark(node->name, arg);
            expect(Token::Type::RParen, "')'");
            return node;
        }
        throw ParseError("unknown operator '" + ident + "'", tok.line, tok.col);
    }

    static std::optional<HalfSpaceDir> half_space_dir(const std::string& s) {
        if (s == "anterior_of") return HalfSpaceDir::AnteriorOf;
        if (s == "posterior_of") return HalfSpaceDir::PosteriorOf;
        if (s == "left_of") return HalfSpaceDir::LeftOf;
        if (s == "right_of") return HalfSpaceDir::RightOf;
        if (s == "superior_of") return HalfSpaceDir::SuperiorOf;
        if (s == "inferior_of") return HalfSpaceDir::InferiorOf;
        return std::nullopt;
    }

    std::unique_ptr<RuleExpr> make_landmark(const std::string& name, const Token& tok) {
        auto e = std::make_unique<RuleExpr>();
        e->kind = RuleExpr::Kind::Landmark;
        e->name = name;
        note_landmark(name, tok);
        return e;
    }

    static std::unique_ptr<RuleExpr> make_binary(RuleExpr::Kind k, std::unique_ptr<RuleExpr> a,
                                                 std::unique_ptr<RuleExpr> b) {
        auto e = std::make_unique<RuleExpr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }

    void check_depth(int depth) const {
        if (depth > kMaxDepth)
            throw ParseError("expression nesting exceeds depth limit of " +
                             std::to_string(kMaxDepth), cur_.line, cur_.col);
    }

    void note_landmark(const std::string& name, const Token& tok) {
        landmark_refs_.push_back({name, tok.line, tok.col});
    }

    Lexer lex_;
    Token cur_;
    std::vector<std::tuple<std::string, int, int>> landmark_refs_;
};

}  // namespace

RuleSet parse_rules(std::string_view text) {
    Parser p(text);
    RuleSet rs = p.parse();
    rs.source_hash = fnv1a64_hex(text);
    return rs;
}

}  // namespace luganopet
