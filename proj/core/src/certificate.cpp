#include "nildiag/certificate.hpp"

#include <json.hpp>

#include "nildiag/errors.hpp"

namespace nildiag {

using nlohmann::json;

namespace {

std::string_view to_string(Normalization::Kind k) {
    switch (k) {
        case Normalization::Kind::None: return "none";
        case Normalization::Kind::Scale: return "scale";
        case Normalization::Kind::Shift: return "shift";
    }
    return "?";
}

Normalization::Kind parse_normalization(const std::string& s) {
    if (s == "none") return Normalization::Kind::None;
    if (s == "scale") return Normalization::Kind::Scale;
    if (s == "shift") return Normalization::Kind::Shift;
    throw ParseError("unknown normalization '" + s + "'", 0, 0);
}

AtomKind parse_atom(const std::string& s) {
    for (AtomKind k : {AtomKind::D1, AtomKind::D2, AtomKind::D3, AtomKind::D4}) {
        if (to_string(k) == s) return k;
    }
    throw ParseError("unknown atom kind '" + s + "'", 0, 0);
}

Fe parse_element(const FieldSpec& F, const std::string& s) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &used, 16);
    } catch (const std::exception&) {
        throw ParseError("invalid field element '" + s + "'", 0, 0);
    }
    if (used != s.size() || v >= F.q()) throw ParseError("invalid field element '" + s + "'", 0, 0);
    return Fe{static_cast<std::uint32_t>(v)};
}

json roots_json(const std::vector<Root>& rs) {
    json out = json::array();
    for (const Root& r : rs) out.push_back({{"value", to_hex(r.value)}, {"multiplicity", r.multiplicity}});
    return out;
}

// Line and column (1-based) of byte offset `pos` in `text`.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t pos) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

std::string certificate_to_json(const SplitCertificate& cert) {
    json blocks = json::array();
    for (const BlockRecord& b : cert.blocks) {
        json layout = json::array();
        for (const Atom& at : b.layout) layout.push_back({{"kind", to_string(at.kind)}, {"position", at.position}});
        json expected = json::array();
        for (Fe x : b.expected_eigenvalues) expected.push_back(to_hex(x));
        blocks.push_back({
            {"factor", format_poly(b.factor)},
            {"offset", b.offset},
            {"route", b.route},
            {"a", b.a ? json(to_hex(*b.a)) : json(nullptr)},
            {"normalization", {{"kind", to_string(b.normalization.kind)}, {"value", to_hex(b.normalization.value)}}},
            {"layout", layout},
            {"expected_eigenvalues", expected},
        });
    }
    json doc = {
        {"schema", kCertificateSchema},
        {"field", cert.a.field().designation()},
        {"order", cert.a.order()},
        {"mode", to_string(cert.mode)},
        {"A", format_matrix(cert.a)},
        {"N", format_matrix(cert.n)},
        {"D", format_matrix(cert.d)},
        {"blocks", blocks},
        {"potency_s", cert.potency_s},
        {"diagonalizable", cert.diagonalizable},
        {"eigenvalues", roots_json(cert.eigenvalues)},
        {"checks", {{"sum_ok", cert.sum_ok}, {"square_zero_ok", cert.square_zero_ok}, {"potency_ok", cert.potency_ok}}},
    };
    return doc.dump(2) + "\n";
}

SplitCertificate certificate_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed certificate JSON", line, col);
    }
    try {
        if (doc.at("schema").get<std::string>() != kCertificateSchema) {
            throw ParseError("unsupported certificate schema '" + doc.at("schema").get<std::string>() + "'", 0, 0);
        }
        Mat a = parse_matrix(doc.at("A").get<std::string>());
        Mat n = parse_matrix(doc.at("N").get<std::string>());
        Mat d = parse_matrix(doc.at("D").get<std::string>());
        const FieldSpec F = a.field();
        if (doc.at("field").get<std::string>() != F.designation()) {
            throw ParseError("certificate field does not match its matrices", 0, 0);
        }

        std::vector<BlockRecord> blocks;
        for (const json& b : doc.at("blocks")) {
            BlockRecord rec{parse_poly(F, b.at("factor").get<std::string>()), b.at("offset").get<std::size_t>(),
                            b.at("route").get<std::string>()};
            if (!b.at("a").is_null()) rec.a = parse_element(F, b.at("a").get<std::string>());
            const json& norm = b.at("normalization");
            rec.normalization.kind = parse_normalization(norm.at("kind").get<std::string>());
            rec.normalization.value = parse_element(F, norm.at("value").get<std::string>());
            for (const json& at : b.at("layout")) {
                rec.layout.push_back({parse_atom(at.at("kind").get<std::string>()), at.at("position").get<std::size_t>()});
            }
            for (const json& x : b.at("expected_eigenvalues")) rec.expected_eigenvalues.push_back(parse_element(F, x.get<std::string>()));
            blocks.push_back(std::move(rec));
        }

        SplitCertificate cert{parse_mode(doc.at("mode").get<std::string>()), std::move(a), std::move(n), std::move(d),
                              std::move(blocks)};
        cert.potency_s = doc.at("potency_s").get<std::uint64_t>();
        cert.diagonalizable = doc.at("diagonalizable").get<bool>();
        for (const json& r : doc.at("eigenvalues")) {
            cert.eigenvalues.push_back({parse_element(F, r.at("value").get<std::string>()), r.at("multiplicity").get<std::size_t>()});
        }
        const json& checks = doc.at("checks");
        cert.sum_ok = checks.at("sum_ok").get<bool>();
        cert.square_zero_ok = checks.at("square_zero_ok").get<bool>();
        cert.potency_ok = checks.at("potency_ok").get<bool>();
        if (cert.a.order() != doc.at("order").get<std::size_t>()) throw ParseError("certificate order mismatch", 0, 0);
        return cert;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid certificate: ") + e.what(), 0, 0);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid certificate: ") + e.what(), 0, 0);
    }
}

}  // namespace nildiag
