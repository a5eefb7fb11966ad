#include "impactir/retrieval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "impactir/error.hpp"

namespace impactir {

namespace {

constexpr auto exhausted = std::numeric_limits<std::uint32_t>::max();

struct Cursor {
    std::span<Posting const> list;
    std::size_t pos = 0;
    double weight = 0.0;

    [[nodiscard]] std::uint32_t doc() const noexcept { return pos < list.size() ? list[pos].doc : exhausted; }
    [[nodiscard]] float impact() const noexcept { return list[pos].impact; }

    /// Galloping skip to the first posting with doc >= target.
    void next_geq(std::uint32_t target) noexcept
    {
        if (pos >= list.size() || list[pos].doc >= target) {
            return;
        }
        std::size_t step = 1;
        std::size_t lo = pos;
        std::size_t hi = pos + 1;
        while (hi < list.size() && list[hi].doc < target) {
            lo = hi;
            step *= 2;
            hi = pos + step;
        }
        hi = std::min(hi, list.size());
        auto it = std::lower_bound(list.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                                   list.begin() + static_cast<std::ptrdiff_t>(hi),
                                   target,
                                   [](Posting const& p, std::uint32_t d) { return p.doc < d; });
        pos = static_cast<std::size_t>(it - list.begin());
    }
};

std::vector<Cursor> open_cursors(ImpactIndex const& index, QueryPlan const& plan)
{
    std::vector<Cursor> cursors;
    cursors.reserve(plan.terms.size());
    for (auto const& e : plan.terms) {
        // a term the index has never seen has an empty posting list
        auto list = e.term.value < index.vocab_size() ? index.postings(e.term) : std::span<Posting const>{};
        cursors.push_back({list, 0, e.weight});
    }
    return cursors;
}

/// `a` ranks before `b`.
bool ranks_before(Candidate const& a, Candidate const& b) noexcept
{
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
}

class TopN {
   public:
    explicit TopN(std::size_t n) : m_n(n) {}

    void offer(Candidate const& c)
    {
        if (m_heap.size() < m_n) {
            m_heap.push(c);
        } else if (ranks_before(c, m_heap.top())) {
            m_heap.pop();
            m_heap.push(c);
        }
    }

    std::vector<Candidate> sorted() &&
    {
        std::vector<Candidate> out;
        out.reserve(m_heap.size());
        while (!m_heap.empty()) {
            out.push_back(m_heap.top());
            m_heap.pop();
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

   private:
    struct Worse {
        bool operator()(Candidate const& a, Candidate const& b) const noexcept { return ranks_before(a, b); }
    };

    std::size_t m_n;
    // top() is the worst retained candidate
    std::priority_queue<Candidate, std::vector<Candidate>, Worse> m_heap;
};

std::vector<SearchResult> to_results(ImpactIndex const& index, std::vector<Candidate> const& ranked)
{
    std::vector<SearchResult> results;
    results.reserve(ranked.size());
    for (auto const& c : ranked) {
        results.push_back({index.doc(c.doc).external_id, c.doc, c.score, c.matched_terms});
    }
    return results;
}

struct TraversalCounts {
    std::size_t visited = 0;
    std::size_t accepted = 0;
};

/// Document-at-a-time traversal requiring `required` matching terms. `lead`
/// cursors generate candidates; the others are probed. `emit` receives every
/// accepted candidate in ascending doc order.
template <typename Emit>
TraversalCounts traverse(std::vector<Cursor>& cursors, std::size_t required, std::size_t lead_count, Emit&& emit)
{
    auto const m = cursors.size();
    // probe order: lead lists first, then the rest shortest-first
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cursors[a].list.size() < cursors[b].list.size();
    });
    std::span<std::size_t const> lead(order.data(), lead_count);
    std::span<std::size_t const> probes(order.data() + lead_count, m - lead_count);

    std::vector<std::ptrdiff_t> hit(m, -1);
    TraversalCounts counts;
    while (true) {
        std::uint32_t doc = exhausted;
        for (auto i : lead) {
            doc = std::min(doc, cursors[i].doc());
        }
        if (doc == exhausted) {
            break;
        }
        ++counts.visited;
        std::fill(hit.begin(), hit.end(), -1);
        std::size_t matched = 0;
        for (auto i : lead) {
            if (cursors[i].doc() == doc) {
                hit[i] = static_cast<std::ptrdiff_t>(cursors[i].pos);
                ++cursors[i].pos;
                ++matched;
            }
        }
        std::size_t left = probes.size();
        for (auto i : probes) {
            if (matched + left < required) {
                break;
            }
            --left;
            cursors[i].next_geq(doc);
            if (cursors[i].doc() == doc) {
                hit[i] = static_cast<std::ptrdiff_t>(cursors[i].pos);
                ++cursors[i].pos;
                ++matched;
            }
        }
        if (matched < required) {
            continue;
        }
        // sum in ascending term order, the same order as a sparse dot product
        double score = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (hit[i] >= 0) {
                score += cursors[i].weight * static_cast<double>(cursors[i].list[hit[i]].impact);
            }
        }
        ++counts.accepted;
        emit(Candidate{doc, score, static_cast<std::uint32_t>(matched)});
    }
    return counts;
}

}  // namespace

void SearchParams::validate() const
{
    if (top_n == 0) {
        throw Error(ErrorCode::InvalidArgument, "top_n must be >= 1");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 1]");
    }
}

SparseVector map_query_terms(std::span<std::pair<std::string, double> const> terms, Vocabulary const& vocab)
{
    std::vector<std::pair<TermId, double>> pairs;
    pairs.reserve(terms.size());
    for (auto const& [term, weight] : terms) {
        if (auto id = vocab.find(term)) {
            pairs.emplace_back(*id, weight);
        }
    }
    return from_pairs(pairs);
}

SparseVector select_query_terms(SparseVector const& query, std::size_t query_k)
{
    return query_k == 0 ? query : top_k_truncate(query, query_k);
}

std::size_t required_matches(std::size_t term_count, double threshold)
{
    if (term_count == 0) {
        return 0;
    }
    // the epsilon absorbs decimal thresholds such as 0.7 * 10 = 7.000000000000001
    auto need = static_cast<std::size_t>(std::ceil(threshold * static_cast<double>(term_count) - 1e-9));
    return std::clamp<std::size_t>(need, 1, term_count);
}

QueryPlan plan_query(SparseVector const& query, SearchParams const& params, ImpactIndex const& index)
{
    params.validate();
    auto selected = select_query_terms(query, params.query_k);
    std::vector<std::pair<TermId, double>> known;
    known.reserve(selected.size());
    for (auto const& e : selected) {
        if (e.term.value < index.vocab_size()) {
            known.emplace_back(e.term, e.weight);
        }
    }
    if (known.empty()) {
        throw Error(ErrorCode::EmptyQuery, "no query terms left after pruning and vocabulary mapping");
    }
    QueryPlan plan;
    plan.terms = from_pairs(known);
    plan.term_count = plan.terms.size();
    plan.required_matches = required_matches(plan.term_count, params.threshold);
    return plan;
}

CandidateTable retrieve_candidates(ImpactIndex const& index, QueryPlan const& plan)
{
    auto cursors = open_cursors(index, plan);
    CandidateTable table;
    traverse(cursors, 1, cursors.size(), [&](Candidate const& c) { table.push_back(c); });
    return table;
}

CandidateTable threshold_filter(CandidateTable candidates, QueryPlan const& plan)
{
    std::erase_if(candidates, [&](Candidate const& c) { return c.matched_terms < plan.required_matches; });
    return candidates;
}

std::vector<SearchResult> rank_top_n(ImpactIndex const& index, std::span<Candidate const> candidates, std::size_t top_n)
{
    if (top_n == 0) {
        throw Error(ErrorCode::InvalidArgument, "top_n must be >= 1");
    }
    TopN heap(top_n);
    for (auto const& c : candidates) {
        heap.offer(c);
    }
    return to_results(index, std::move(heap).sorted());
}

SearchOutcome search(ImpactIndex const& index, SparseVector const& query, SearchParams const& params)
{
    auto start = std::chrono::steady_clock::now();
    auto plan = plan_query(query, params, index);
    auto cursors = open_cursors(index, plan);

    SearchOutcome outcome;
    TopN heap(params.top_n);
    if (params.count_all_candidates || plan.required_matches == 1) {
        std::size_t visited = 0;
        std::size_t accepted = 0;
        traverse(cursors, 1, cursors.size(), [&](Candidate const& c) {
            ++visited;
            if (c.matched_terms >= plan.required_matches) {
                ++accepted;
                heap.offer(c);
            }
        });
        outcome.stats.candidates_pre_filter = visited;
        outcome.stats.candidates_post_filter = accepted;
    } else {
        auto lead = plan.term_count - plan.required_matches + 1;
        auto counts = traverse(cursors, plan.required_matches, lead, [&](Candidate const& c) { heap.offer(c); });
        outcome.stats.candidates_post_filter = counts.accepted;
    }
    outcome.results = to_results(index, std::move(heap).sorted());
    outcome.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

}  // namespace impactir
