#include "naqs/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace naqs {

namespace {

enum class Tok {
    Ident,
    Number,
    String,
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws_and_comments();
        const int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", 0.0, line, col};
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                text.push_back(advance());
            }
            return {Tok::Ident, text, 0.0, line, col};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return lex_number(line, col);
        }
        if (c == '"') {
            advance();
            std::string text;
            while (pos_ < src_.size() && src_[pos_] != '"') text.push_back(advance());
            if (pos_ >= src_.size()) {
                throw QasmParseError(line, col, "unterminated string literal");
            }
            advance();
            return {Tok::String, text, 0.0, line, col};
        }
        advance();
        switch (c) {
        case ';': return {Tok::Semicolon, ";", 0.0, line, col};
        case ',': return {Tok::Comma, ",", 0.0, line, col};
        case '(': return {Tok::LParen, "(", 0.0, line, col};
        case ')': return {Tok::RParen, ")", 0.0, line, col};
        case '[': return {Tok::LBracket, "[", 0.0, line, col};
        case ']': return {Tok::RBracket, "]", 0.0, line, col};
        case '+': return {Tok::Plus, "+", 0.0, line, col};
        case '*': return {Tok::Star, "*", 0.0, line, col};
        case '/': return {Tok::Slash, "/", 0.0, line, col};
        case '-':
            if (pos_ < src_.size() && src_[pos_] == '>') {
                advance();
                return {Tok::Arrow, "->", 0.0, line, col};
            }
            return {Tok::Minus, "-", 0.0, line, col};
        default:
            throw QasmParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }

  private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(int line, int col) {
        std::string text;
        bool any_digit = false;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            text.push_back(advance());
            any_digit = true;
        }
        if (pos_ < src_.size() && src_[pos_] == '.') {
            text.push_back(advance());
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text.push_back(advance());
                any_digit = true;
            }
        }
        if (!any_digit) {
            throw QasmParseError(line, col, "malformed number");
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            text.push_back(advance());
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                text.push_back(advance());
            }
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                throw QasmParseError(line, col, "malformed exponent");
            }
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text.push_back(advance());
            }
        }
        Token t{Tok::Number, text, 0.0, line, col};
        t.value = std::strtod(text.c_str(), nullptr);
        return t;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Register {
    std::string name;
    int size = 0;
    int offset = 0; // quantum registers only: first flat qubit index
};

// One argument of a gate/measure/barrier statement: either a single flat
// index or a whole register.
struct Arg {
    bool whole = false;
    int index = -1;  // flat qubit index, or classical bit index
    int size = 0;    // whole registers
    int offset = 0;
    Token where;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lexer_(src) { bump(); }

    Circuit parse() {
        expect_header();
        // Ops are gathered with their source positions and validated at the
        // end: registers may still be declared mid-program, so the flat
        // qubit count is only final once every statement has been seen.
        std::vector<std::pair<GateOp, Token>> pending;
        while (cur_.kind != Tok::End) {
            statement(pending);
        }
        if (total_qubits_ == 0) {
            throw QasmParseError(1, 1, "program declares no quantum register");
        }
        Circuit c(total_qubits_);
        for (auto& [op, where] : pending) {
            try {
                c.add(std::move(op));
            } catch (const ContractError& e) {
                throw QasmParseError(where.line, where.col, e.what());
            }
        }
        return c;
    }

  private:
    void bump() { cur_ = lexer_.next(); }

    Token expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) {
            throw QasmParseError(cur_.line, cur_.col,
                                 "expected " + what + ", got '" + describe(cur_) + "'");
        }
        Token t = cur_;
        bump();
        return t;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return "end of input";
        return t.text;
    }

    void expect_header() {
        const Token kw = expect(Tok::Ident, "OPENQASM header");
        if (kw.text != "OPENQASM") {
            throw QasmParseError(kw.line, kw.col, "file must start with 'OPENQASM 2.0;'");
        }
        const Token version = expect(Tok::Number, "version number");
        if (version.text != "2.0") {
            throw QasmParseError(version.line, version.col,
                                 "unsupported OpenQASM version '" + version.text +
                                     "' (only 2.0)");
        }
        expect(Tok::Semicolon, "';'");
    }

    void statement(std::vector<std::pair<GateOp, Token>>& out) {
        const Token head = expect(Tok::Ident, "statement");
        const std::string& kw = head.text;
        if (kw == "OPENQASM") {
            throw QasmParseError(head.line, head.col, "duplicate OPENQASM header");
        }
        if (kw == "include") {
            const Token file = expect(Tok::String, "include file name");
            if (file.text != "qelib1.inc") {
                throw QasmParseError(file.line, file.col,
                                     "only include \"qelib1.inc\" is supported");
            }
            expect(Tok::Semicolon, "';'");
            return;
        }
        if (kw == "qreg" || kw == "creg") {
            declare_register(kw == "qreg");
            return;
        }
        if (kw == "measure") {
            measure_statement(out);
            return;
        }
        if (kw == "barrier") {
            barrier_statement(out);
            return;
        }
        if (kw == "if" || kw == "gate" || kw == "reset" || kw == "opaque") {
            throw QasmParseError(head.line, head.col,
                                 "unsupported statement '" + kw +
                                     "' (classical control, gate definitions, and reset are "
                                     "outside the supported subset)");
        }
        gate_statement(head, out);
    }

    void declare_register(bool quantum) {
        const Token name = expect(Tok::Ident, "register name");
        expect(Tok::LBracket, "'['");
        const Token size = expect(Tok::Number, "register size");
        expect(Tok::RBracket, "']'");
        expect(Tok::Semicolon, "';'");
        if (size.value < 1 || size.value != std::floor(size.value)) {
            throw QasmParseError(size.line, size.col, "register size must be a positive integer");
        }
        for (const auto& regs : {qregs_, cregs_}) {
            for (const auto& r : regs) {
                if (r.name == name.text) {
                    throw QasmParseError(name.line, name.col,
                                         "register '" + name.text + "' already declared");
                }
            }
        }
        Register r{name.text, static_cast<int>(size.value), 0};
        if (quantum) {
            r.offset = total_qubits_;
            total_qubits_ += r.size;
            qregs_.push_back(r);
        } else {
            r.offset = total_clbits_;
            total_clbits_ += r.size;
            cregs_.push_back(r);
        }
    }

    const Register* find_register(const std::vector<Register>& regs, const std::string& name) {
        for (const auto& r : regs) {
            if (r.name == name) return &r;
        }
        return nullptr;
    }

    Arg argument(bool quantum) {
        const Token name = expect(Tok::Ident, "register reference");
        const Register* reg = find_register(quantum ? qregs_ : cregs_, name.text);
        if (!reg) {
            throw QasmParseError(name.line, name.col,
                                 std::string(quantum ? "quantum" : "classical") + " register '" +
                                     name.text + "' not declared");
        }
        Arg a;
        a.where = name;
        if (cur_.kind == Tok::LBracket) {
            bump();
            const Token idx = expect(Tok::Number, "index");
            expect(Tok::RBracket, "']'");
            if (idx.value < 0 || idx.value != std::floor(idx.value)) {
                throw QasmParseError(idx.line, idx.col, "index must be a non-negative integer");
            }
            const int i = static_cast<int>(idx.value);
            if (i >= reg->size) {
                throw QasmParseError(idx.line, idx.col,
                                     "index " + std::to_string(i) + " out of range for " +
                                         name.text + "[" + std::to_string(reg->size) + "]");
            }
            a.index = reg->offset + i;
        } else {
            a.whole = true;
            a.size = reg->size;
            a.offset = reg->offset;
        }
        return a;
    }

    void gate_statement(const Token& head, std::vector<std::pair<GateOp, Token>>& out) {
        GateKind kind;
        try {
            kind = gate_kind_from_name(head.text);
        } catch (const ContractError&) {
            throw QasmParseError(head.line, head.col,
                                 "unsupported gate '" + head.text + "'");
        }
        if (kind == GateKind::MEASURE || kind == GateKind::BARRIER) {
            throw QasmParseError(head.line, head.col, "unexpected keyword");
        }
        std::vector<double> params;
        if (cur_.kind == Tok::LParen) {
            bump();
            if (cur_.kind != Tok::RParen) {
                params.push_back(expression());
                while (cur_.kind == Tok::Comma) {
                    bump();
                    params.push_back(expression());
                }
            }
            expect(Tok::RParen, "')'");
        }
        if (static_cast<int>(params.size()) != gate_param_count(kind)) {
            throw QasmParseError(head.line, head.col,
                                 "gate '" + head.text + "' expects " +
                                     std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                                     std::to_string(params.size()));
        }
        std::vector<Arg> args;
        args.push_back(argument(true));
        while (cur_.kind == Tok::Comma) {
            bump();
            args.push_back(argument(true));
        }
        expect(Tok::Semicolon, "';'");
        if (static_cast<int>(args.size()) != gate_arity(kind)) {
            throw QasmParseError(head.line, head.col,
                                 "gate '" + head.text + "' expects " +
                                     std::to_string(gate_arity(kind)) + " operand(s), got " +
                                     std::to_string(args.size()));
        }
        broadcast(head, kind, params, args, out);
    }

    // Whole-register arguments broadcast element-wise; they must all have
    // the same length, and indexed arguments stay fixed.
    void broadcast(const Token& head, GateKind kind, const std::vector<double>& params,
                   const std::vector<Arg>& args, std::vector<std::pair<GateOp, Token>>& out) {
        int reps = 1;
        for (const auto& a : args) {
            if (!a.whole) continue;
            if (reps != 1 && a.size != reps) {
                throw QasmParseError(a.where.line, a.where.col,
                                     "register sizes differ in broadcast statement");
            }
            reps = a.size;
        }
        for (int j = 0; j < reps; ++j) {
            std::vector<int> qubits;
            qubits.reserve(args.size());
            for (const auto& a : args) {
                qubits.push_back(a.whole ? a.offset + j : a.index);
            }
            out.emplace_back(GateOp{kind, std::move(qubits), params}, head);
        }
    }

    void measure_statement(std::vector<std::pair<GateOp, Token>>& out) {
        const Token at = cur_;
        const Arg src = argument(true);
        expect(Tok::Arrow, "'->'");
        const Arg dst = argument(false);
        expect(Tok::Semicolon, "';'");
        if (src.whole != dst.whole || (src.whole && src.size != dst.size)) {
            throw QasmParseError(at.line, at.col,
                                 "measure source and destination sizes differ");
        }
        if (src.whole) {
            for (int j = 0; j < src.size; ++j) {
                out.emplace_back(GateOp{GateKind::MEASURE, {src.offset + j}, {}}, at);
            }
        } else {
            out.emplace_back(GateOp{GateKind::MEASURE, {src.index}, {}}, at);
        }
    }

    void barrier_statement(std::vector<std::pair<GateOp, Token>>& out) {
        std::vector<Arg> args;
        args.push_back(argument(true));
        while (cur_.kind == Tok::Comma) {
            bump();
            args.push_back(argument(true));
        }
        expect(Tok::Semicolon, "';'");
        for (const auto& a : args) {
            if (a.whole) {
                for (int j = 0; j < a.size; ++j) {
                    out.emplace_back(GateOp{GateKind::BARRIER, {a.offset + j}, {}}, a.where);
                }
            } else {
                out.emplace_back(GateOp{GateKind::BARRIER, {a.index}, {}}, a.where);
            }
        }
    }

    // expression := term (('+'|'-') term)*
    double expression() {
        double v = term();
        while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
            const bool plus = cur_.kind == Tok::Plus;
            bump();
            const double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = factor();
        while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
            const bool mul = cur_.kind == Tok::Star;
            const Token at = cur_;
            bump();
            const double rhs = factor();
            if (!mul && rhs == 0.0) {
                throw QasmParseError(at.line, at.col, "division by zero in angle expression");
            }
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double factor() {
        if (cur_.kind == Tok::Minus) {
            bump();
            return -factor();
        }
        if (cur_.kind == Tok::LParen) {
            bump();
            const double v = expression();
            expect(Tok::RParen, "')'");
            return v;
        }
        if (cur_.kind == Tok::Number) {
            const double v = cur_.value;
            bump();
            return v;
        }
        if (cur_.kind == Tok::Ident && cur_.text == "pi") {
            bump();
            return M_PI;
        }
        throw QasmParseError(cur_.line, cur_.col,
                             "expected number, 'pi', or parenthesized expression, got '" +
                                 describe(cur_) + "'");
    }

    Lexer lexer_;
    Token cur_;
    std::vector<Register> qregs_;
    std::vector<Register> cregs_;
    int total_qubits_ = 0;
    int total_clbits_ = 0;
};

std::string format_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Circuit parse_qasm(const std::string& text) { return Parser(text).parse(); }

Circuit parse_qasm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw QasmParseError(0, 0, "cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_qasm(buf.str());
    c.set_name(std::filesystem::path(path).stem().string());
    return c;
}

std::string emit_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits() << "];\n";
    bool has_measure = false;
    for (const auto& op : c.ops()) {
        if (op.kind == GateKind::MEASURE) {
            has_measure = true;
            break;
        }
    }
    if (has_measure) {
        out << "creg c[" << c.num_qubits() << "];\n";
    }
    for (const auto& op : c.ops()) {
        if (op.kind == GateKind::MEASURE) {
            out << "measure q[" << op.qubits[0] << "] -> c[" << op.qubits[0] << "];\n";
            continue;
        }
        out << gate_name(op.kind);
        if (!op.params.empty()) {
            out << "(";
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                if (i) out << ",";
                out << format_angle(op.params[i]);
            }
            out << ")";
        }
        out << " ";
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            if (i) out << ",";
            out << "q[" << op.qubits[i] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

} // namespace naqs
