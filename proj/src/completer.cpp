#include "dcls/completer.hpp"

#include "json.hpp"

namespace dcls {

std::optional<std::string> validate_triple(const TransversalTriple & t)
{
    const auto & p = t.p;
    for (const auto & o : t.offsets)
        if (o.column < 0 || o.column >= p.value() || o.symbol < 0 || o.symbol >= p.value())
            return "offsets must be reduced residues mod " + std::to_string(p.value());
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const auto & x = t.offsets[a];
            const auto & y = t.offsets[b];
            const auto pair = " (transversals " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + ")";
            if (x.column == y.column)
                return "columns not distinct" + pair;
            if (x.symbol == y.symbol)
                return "symbols not distinct" + pair;
            if (p.reduce(x.symbol - x.column) == p.reduce(y.symbol - y.column))
                return "symbol - column not distinct" + pair;
        }
    return std::nullopt;
}

CyclicTransversalOffset normalize_offset(const CyclicTransversalOffset & offset, const NormalizationMap & map, const Prime & p)
{
    auto o = shift_offset(offset, Axis::columns, map.column_shift, p.value());
    o = shift_offset(o, Axis::symbols, map.symbol_shift, p.value());
    return multiply_offset(o, map.multiplier, p.value());
}

NormalForm normalize(const TransversalTriple & t, const Ordering & ordering)
{
    if (auto why = validate_triple(t))
        throw PreconditionError("invalid transversal triple: " + *why);
    const auto & p = t.p;
    const auto & first = t.offsets[ordering[0]];
    const auto & second = t.offsets[ordering[1]];
    const auto & third = t.offsets[ordering[2]];

    NormalizationMap map {p.reduce(-first.column), p.reduce(-first.symbol), inv(second.column - first.column, p)};
    const auto a = normalize_offset(first, map, p);
    const auto b = normalize_offset(second, map, p);
    const auto c = normalize_offset(third, map, p);
    if (a.column != 0 || a.symbol != 0 || b.column != 1)
        throw std::logic_error("normalization did not reach the standard frame");

    NormalForm form {{b.symbol, c.column, c.symbol}, map};
    if (form.triple.j == 0 || form.triple.j == 1)
        throw PreconditionError("degenerate triple: normalized j = " + std::to_string(form.triple.j));
    return form;
}

FirstRow denormalize(const FirstRow & normalized, const NormalizationMap & map)
{
    const Prime p(normalized.order());
    auto row = multiply(normalized, inv(map.multiplier, p));
    row = shift(row, Axis::symbols, -map.symbol_shift);
    return shift(row, Axis::columns, -map.column_shift);
}

std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::contained_in_b:
        return "contained_in_B";
    case Method::trade:
        return "trade";
    case Method::search:
        return "search";
    }
    return "unknown";
}

std::optional<Method> method_from_string(std::string_view text) noexcept
{
    for (auto m : {Method::contained_in_b, Method::trade, Method::search})
        if (to_string(m) == text)
            return m;
    return std::nullopt;
}

FirstRow completed_row(const CompletionCertificate & cert)
{
    return denormalize(cert.first_row, cert.normal_form.map);
}

CompletionCertificate complete(const TransversalTriple & t, const SearchPolicy & policy)
{
    const auto & p = t.p;
    if (p.value() <= 7)
        throw PreconditionError("unsupported order " + std::to_string(p.value()) + ": completion is guaranteed only for primes p > 7");
    if (auto why = validate_triple(t))
        throw PreconditionError("invalid transversal triple: " + *why);

    std::array<NormalForm, 6> forms;
    for (std::size_t k = 0; k < kOrderings.size(); ++k)
        forms[k] = normalize(t, kOrderings[k]);

    for (std::size_t k = 0; k < kOrderings.size(); ++k) {
        const auto & nt = forms[k].triple;
        if (nt.e == p.reduce(nt.j * nt.c))
            return {Method::contained_in_b, p.value(), kOrderings[k], forms[k], std::nullopt, std::nullopt, build_bnj(p.value(), nt.j)};
    }

    TradeEngine engine(p);
    for (std::size_t k = 0; k < kOrderings.size(); ++k)
        if (auto done = engine.complete(forms[k].triple))
            return {Method::trade, p.value(), kOrderings[k], forms[k], done->params, std::nullopt, std::move(done->row)};

    auto result = solve(SearchProblem::from_triple(p, forms[0].triple), policy);
    if (! result.row)
        throw CompletionFailure("no completion found for p=" + std::to_string(p.value()) + " (j, c, e) = ("
            + std::to_string(forms[0].triple.j) + ", " + std::to_string(forms[0].triple.c) + ", "
            + std::to_string(forms[0].triple.e) + ") after " + std::to_string(result.stats.restarts) + " restarts");
    return {Method::search, p.value(), kOrderings[0], forms[0], std::nullopt, policy, std::move(*result.row)};
}

namespace {
    std::optional<FirstRow> rebuild(const CompletionCertificate & cert, const Prime & p, bool replay_search)
    {
        const auto & nt = cert.normal_form.triple;
        switch (cert.method) {
        case Method::contained_in_b:
            if (nt.e != p.reduce(nt.j * nt.c))
                return std::nullopt;
            return build_bnj(p.value(), nt.j);
        case Method::trade: {
            if (! cert.trade)
                return std::nullopt;
            auto row = apply_trade(p, nt.j, *cert.trade);
            if (row[0] != 0 || row[1] != nt.j || row[nt.c] != nt.e)
                return std::nullopt;
            return row;
        }
        case Method::search:
            if (! cert.search)
                return std::nullopt;
            if (! replay_search)
                return cert.first_row;
            return solve(SearchProblem::from_triple(p, nt), *cert.search).row;
        }
        return std::nullopt;
    }
}

bool verify_certificate(const CompletionCertificate & cert, const TransversalTriple & t, bool replay_search)
{
    try {
        if (cert.p != t.p.value() || validate_triple(t))
            return false;
        const Prime & p = t.p;
        if (normalize(t, cert.ordering) != cert.normal_form)
            return false;
        if (cert.first_row.order() != p.value())
            return false;

        auto rebuilt = rebuild(cert, p, replay_search);
        if (! rebuilt || *rebuilt != cert.first_row)
            return false;

        const auto square = expand(completed_row(cert));
        if (! square.is_latin() || ! square.is_diagonally_cyclic())
            return false;
        for (const auto & o : t.offsets)
            for (Residue i = 0; i < p.value(); ++i)
                if (! square.contains({i, p.reduce(o.column + i), p.reduce(o.symbol + i)}))
                    return false;
        return true;
    }
    catch (const PreconditionError &) {
        return false;
    }
}

std::string certificate_to_json(const CompletionCertificate & cert)
{
    nlohmann::ordered_json j;
    j["version"] = CompletionCertificate::kVersion;
    j["type"] = "certificate";
    j["method"] = std::string(to_string(cert.method));
    j["p"] = cert.p;
    j["ordering"] = cert.ordering;
    j["normal_form"] = {
        {"j", cert.normal_form.triple.j},
        {"c", cert.normal_form.triple.c},
        {"e", cert.normal_form.triple.e},
        {"column_shift", cert.normal_form.map.column_shift},
        {"symbol_shift", cert.normal_form.map.symbol_shift},
        {"multiplier", cert.normal_form.map.multiplier},
    };
    if (cert.trade)
        j["trade"] = {{"m", cert.trade->m}, {"x", cert.trade->x}, {"alpha", cert.trade->alpha}, {"gamma", cert.trade->gamma}};
    else
        j["trade"] = nullptr;
    if (cert.search)
        j["search"] = {
            {"seed", cert.search->seed},
            {"restart_cutoff_initial", cert.search->restart_cutoff_initial},
            {"restart_growth", cert.search->restart_growth},
            {"max_restarts", cert.search->max_restarts},
        };
    else
        j["search"] = nullptr;
    j["first_row"] = encode_row(cert.first_row);
    j["completed_row"] = encode_row(completed_row(cert));
    return j.dump();
}

CompletionCertificate certificate_from_json(std::string_view text)
{
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("version").get<int>() != CompletionCertificate::kVersion)
            throw PreconditionError("unsupported certificate version");
        auto method = method_from_string(j.at("method").get<std::string>());
        if (! method)
            throw PreconditionError("unknown certificate method");

        const auto & nf = j.at("normal_form");
        std::optional<TradeParams> trade;
        if (! j.at("trade").is_null()) {
            const auto & tr = j.at("trade");
            trade = TradeParams {tr.at("m").get<int>(), tr.at("x").get<Residue>(), tr.at("alpha").get<Residue>(), tr.at("gamma").get<Residue>()};
        }
        std::optional<SearchPolicy> search;
        if (! j.at("search").is_null()) {
            const auto & s = j.at("search");
            search = SearchPolicy {s.at("seed").get<std::uint64_t>(), s.at("restart_cutoff_initial").get<std::uint64_t>(),
                s.at("restart_growth").get<double>(), s.at("max_restarts").get<int>()};
        }
        return CompletionCertificate {
            *method,
            j.at("p").get<std::int64_t>(),
            j.at("ordering").get<Ordering>(),
            NormalForm {
                {nf.at("j").get<Residue>(), nf.at("c").get<Residue>(), nf.at("e").get<Residue>()},
                {nf.at("column_shift").get<Residue>(), nf.at("symbol_shift").get<Residue>(), nf.at("multiplier").get<Residue>()},
            },
            trade,
            search,
            FirstRow(decode_row(j.at("first_row").get<std::string>())),
        };
    }
    catch (const nlohmann::json::exception & e) {
        throw PreconditionError(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace dcls
