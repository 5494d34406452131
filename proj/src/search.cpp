#include "dcls/search.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>

namespace dcls {

SearchProblem SearchProblem::from_triple(const Prime & p, NormalTriple t)
{
    SearchProblem problem {p, {}};
    problem.fixed[0] = 0;
    problem.fixed[p.reduce(1)] = p.reduce(t.j);
    problem.fixed[p.reduce(t.c)] = p.reduce(t.e);
    return problem;
}

std::optional<std::string> consistency_violation(const SearchProblem & problem)
{
    const std::int64_t n = problem.p.value();
    std::vector<bool> symbol(static_cast<std::size_t>(n)), difference(static_cast<std::size_t>(n));
    for (auto [column, s] : problem.fixed) {
        if (column < 0 || column >= n || s < 0 || s >= n)
            return "fixed cell (" + std::to_string(column) + ", " + std::to_string(s) + ") out of range";
        if (symbol[s])
            return "symbol " + std::to_string(s) + " fixed twice";
        const Residue d = problem.p.reduce(s - column);
        if (difference[d])
            return "difference " + std::to_string(d) + " fixed twice (column " + std::to_string(column) + ")";
        symbol[s] = difference[d] = true;
    }
    return std::nullopt;
}

namespace {

    enum class Outcome { found, exhausted, cutoff };

    class Searcher {
    public:
        explicit Searcher(const SearchProblem & problem) :
            n_(problem.p.value()),
            row_(static_cast<std::size_t>(n_), -1),
            used_symbol_(static_cast<std::size_t>(n_), 0),
            used_difference_(static_cast<std::size_t>(n_), 0),
            candidates_(static_cast<std::size_t>(n_))
        {
            for (auto [column, s] : problem.fixed) {
                row_[column] = s;
                used_symbol_[s] = 1;
                used_difference_[diff(s, column)] = 1;
            }
            for (Residue column = 0; column < n_; ++column)
                if (row_[column] < 0)
                    open_.push_back(column);
        }

        // Randomized run bounded by `budget` assignments.
        Outcome run(std::mt19937_64 & rng, std::uint64_t budget, std::uint64_t & nodes)
        {
            rng_ = &rng;
            budget_ = budget;
            nodes_ = 0;
            auto outcome = descend(0);
            nodes += nodes_;
            return outcome;
        }

        // Deterministic full enumeration in lexicographic order.
        void enumerate(const std::function<void(const std::vector<Residue> &)> & visit)
        {
            rng_ = nullptr;
            budget_ = std::numeric_limits<std::uint64_t>::max();
            visit_ = &visit;
            descend(0);
            visit_ = nullptr;
        }

        [[nodiscard]] const std::vector<Residue> & row() const noexcept { return row_; }

    private:
        Residue diff(Residue s, Residue column) const noexcept
        {
            Residue d = s - column;
            return d < 0 ? d + n_ : d;
        }

        Outcome descend(std::size_t depth)
        {
            if (depth == open_.size()) {
                if (visit_) {
                    (*visit_)(row_);
                    return Outcome::exhausted;
                }
                return Outcome::found;
            }

            const Residue column = open_[depth];
            auto & options = candidates_[depth];
            options.clear();
            for (Residue s = 0; s < n_; ++s)
                if (! used_symbol_[s] && ! used_difference_[diff(s, column)])
                    options.push_back(s);

            if (rng_)
                for (std::size_t i = options.size(); i > 1; --i)
                    std::swap(options[i - 1], options[(*rng_)() % i]);

            for (Residue s : options) {
                if (nodes_ >= budget_)
                    return Outcome::cutoff;
                ++nodes_;
                const Residue d = diff(s, column);
                row_[column] = s;
                used_symbol_[s] = used_difference_[d] = 1;
                auto outcome = descend(depth + 1);
                if (outcome == Outcome::found)
                    return outcome;
                used_symbol_[s] = used_difference_[d] = 0;
                row_[column] = -1;
                if (outcome == Outcome::cutoff)
                    return outcome;
            }
            return Outcome::exhausted;
        }

        std::int64_t n_;
        std::vector<Residue> row_;
        std::vector<std::uint8_t> used_symbol_;
        std::vector<std::uint8_t> used_difference_;
        std::vector<Residue> open_;
        std::vector<std::vector<Residue>> candidates_;

        std::mt19937_64 * rng_ = nullptr;
        std::uint64_t budget_ = 0;
        std::uint64_t nodes_ = 0;
        const std::function<void(const std::vector<Residue> &)> * visit_ = nullptr;
    };

    void require_consistent(const SearchProblem & problem)
    {
        if (auto why = consistency_violation(problem))
            throw PreconditionError("inconsistent fixed assignments: " + *why);
    }

}

SearchResult solve(const SearchProblem & problem, const SearchPolicy & policy)
{
    require_consistent(problem);
    const std::int64_t n = problem.p.value();
    if (policy.initial_cutoff(n) < static_cast<std::uint64_t>(n))
        throw PreconditionError("restart cutoff must be at least p");
    if (! (policy.restart_growth > 1.0))
        throw PreconditionError("restart growth must exceed 1");
    if (policy.max_restarts < 1)
        throw PreconditionError("max_restarts must be at least 1");

    std::mt19937_64 rng(policy.seed);
    SearchResult result;
    double cutoff = static_cast<double>(policy.initial_cutoff(n));
    constexpr double cap = static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2);

    for (int restart = 0; restart < policy.max_restarts; ++restart) {
        ++result.stats.restarts;
        Searcher searcher(problem);
        const auto budget = static_cast<std::uint64_t>(std::min(cutoff, cap));
        auto outcome = searcher.run(rng, budget, result.stats.nodes);
        if (outcome == Outcome::found) {
            result.row.emplace(searcher.row());
            return result;
        }
        if (outcome == Outcome::exhausted) {
            result.stats.proved_infeasible = true;
            return result;
        }
        cutoff *= policy.restart_growth;
    }
    return result;
}

std::vector<FirstRow> exhaustive_solve(const SearchProblem & problem)
{
    if (problem.p.value() > kExhaustiveLimit)
        throw PreconditionError("exhaustive_solve is limited to p <= " + std::to_string(kExhaustiveLimit));
    require_consistent(problem);
    std::vector<FirstRow> out;
    Searcher searcher(problem);
    searcher.enumerate([&](const std::vector<Residue> & row) { out.emplace_back(row); });
    return out;
}

} // namespace dcls
