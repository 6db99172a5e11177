#include "msd/catalog.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "msd/digraph6.hpp"
#include "msd/expansion.hpp"

namespace msd {

namespace {

namespace fs = std::filesystem;

int resolve_jobs(int jobs, std::size_t work_items) {
    if (jobs <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        jobs = hw ? static_cast<int>(hw) : 1;
    }
    if (static_cast<std::size_t>(jobs) > work_items && work_items > 0)
        jobs = static_cast<int>(work_items);
    return std::max(jobs, 1);
}

fs::path resolve_scratch(const EnumOptions& opts) {
    if (!opts.scratch.empty()) return opts.scratch;
    return fs::temp_directory_path();
}

// Sort fixed-stride records in place and drop duplicates.
void sort_unique_records(std::string& blob, std::size_t stride) {
    if (blob.empty()) return;
    const std::size_t count = blob.size() / stride;
    std::vector<std::uint32_t> idx(count);
    std::iota(idx.begin(), idx.end(), 0);
    const char* base = blob.data();
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        return std::memcmp(base + a * stride, base + b * stride, stride) < 0;
    };
    std::sort(idx.begin(), idx.end(), less);

    std::string out;
    out.reserve(blob.size());
    const char* prev = nullptr;
    for (std::uint32_t i : idx) {
        const char* rec = base + i * stride;
        if (prev && std::memcmp(prev, rec, stride) == 0) continue;
        out.append(rec, stride);
        prev = rec;
    }
    blob = std::move(out);
}

// One worker's candidate store: an in-memory buffer that spills sorted,
// deduplicated runs to scratch files once the entry budget is hit.
class CandidateSink {
public:
    CandidateSink(std::size_t stride, std::size_t budget_entries, fs::path scratch,
                  std::string run_prefix)
        : stride_(stride),
          budget_(std::max<std::size_t>(budget_entries, 1024)),
          scratch_(std::move(scratch)),
          run_prefix_(std::move(run_prefix)) {}

    void push(const std::string& code) {
        blob_.append(code);
        if (blob_.size() / stride_ >= budget_) spill();
    }

    void spill() {
        if (blob_.empty()) return;
        sort_unique_records(blob_, stride_);
        fs::path path = scratch_ / (run_prefix_ + std::to_string(runs_.size()) + ".d6");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open scratch run file " + path.string());
        for (std::size_t off = 0; off + stride_ <= blob_.size(); off += stride_) {
            out.put('&');
            out.write(blob_.data() + off, static_cast<std::streamsize>(stride_));
            out.put('\n');
        }
        out.flush();
        if (!out) throw std::runtime_error("failed writing scratch run " + path.string());
        runs_.push_back(std::move(path));
        blob_.clear();
    }

    std::string& blob() { return blob_; }
    const std::vector<fs::path>& runs() const { return runs_; }

private:
    std::size_t stride_;
    std::size_t budget_;
    fs::path scratch_;
    std::string run_prefix_;
    std::string blob_;
    std::vector<fs::path> runs_;
};

// Merge sorted-unique run files into one sorted-unique blob.
std::string merge_runs(const std::vector<fs::path>& runs, std::size_t stride) {
    struct Source {
        std::ifstream in;
        std::string line;
        bool ok = false;
    };
    std::vector<Source> sources(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        sources[i].in.open(runs[i], std::ios::binary);
        if (!sources[i].in)
            throw std::runtime_error("cannot reopen scratch run " + runs[i].string());
        sources[i].ok = static_cast<bool>(std::getline(sources[i].in, sources[i].line));
    }

    auto record = [&](const Source& s) -> std::string_view {
        std::string_view v = s.line;
        if (!v.empty() && v.front() == '&') v.remove_prefix(1);
        return v;
    };

    std::string out;
    std::string last;
    for (;;) {
        int min_at = -1;
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (!sources[i].ok) continue;
            if (min_at < 0 || record(sources[i]) < record(sources[static_cast<std::size_t>(min_at)]))
                min_at = static_cast<int>(i);
        }
        if (min_at < 0) break;
        Source& s = sources[static_cast<std::size_t>(min_at)];
        std::string_view rec = record(s);
        if (rec.size() != stride)
            throw std::runtime_error("scratch run contains a record of wrong length");
        if (last.empty() || rec != last) {
            out.append(rec);
            last.assign(rec);
        }
        s.ok = static_cast<bool>(std::getline(s.in, s.line));
    }
    return out;
}

void emit_children(const Digraph& parent, CandidateSink& sink) {
    const int n = parent.order();

    for (const Arc& a : parent.arcs())
        sink.push(canonical_form(internal_expansion(parent, a.from, a.to)).str());

    for (int u = 0; u < n; ++u)
        sink.push(canonical_form(external_expansion(parent, u, u)).str());

    for (int u = 0; u < n; ++u) {
        for (int w = 0; w < n; ++w) {
            if (u == w || parent.has_arc(u, w)) continue;
            if (!external_expansion_preserves_msc(parent, u, w)) continue;
            sink.push(canonical_form(external_expansion(parent, u, w)).str());
        }
    }
}

}  // namespace

Digraph Catalog::decode(std::size_t i) const { return digraph6_decode(code_view(i)); }

bool Catalog::contains(std::string_view code) const {
    if (!code.empty() && code.front() == '&') code.remove_prefix(1);
    if (code.size() != code_len_) return false;
    const std::size_t count = size();
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (code_view(mid) < code)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < count && code_view(lo) == code;
}

Catalog Catalog::seed() {
    Catalog c;
    c.order_ = 1;
    c.code_len_ = digraph6_code_length(1);
    c.blob_ = canonical_form(Digraph::single_vertex()).str();
    c.counts_.add(1, 0, 1);
    return c;
}

Catalog Catalog::from_sorted_codes(int order, std::string blob) {
    Catalog c;
    c.order_ = order;
    c.code_len_ = digraph6_code_length(order);
    if (blob.size() % c.code_len_ != 0)
        throw std::invalid_argument("catalog blob is not a whole number of records");
    c.blob_ = std::move(blob);
    std::string_view prev;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::string_view rec = c.code_view(i);
        if (i > 0 && prev >= rec)
            throw std::invalid_argument("catalog records must be strictly increasing");
        c.counts_.add(order, digraph6_arc_count(rec), 1);
        prev = rec;
    }
    return c;
}

Catalog expand_catalog(const Catalog& prev, const EnumOptions& opts) {
    if (prev.order() < 1 || prev.size() == 0)
        throw std::invalid_argument("expand_catalog needs a nonempty predecessor catalog");
    if (prev.order() >= Digraph::kMaxOrder)
        throw std::invalid_argument("cannot expand beyond order 62");
    if (prev.counts().order_total(prev.order()) != prev.size())
        throw std::invalid_argument("predecessor catalog counts are inconsistent");

    const int child_order = prev.order() + 1;
    const std::size_t stride = digraph6_code_length(child_order);
    const int jobs = resolve_jobs(opts.jobs, prev.size());
    const fs::path scratch = resolve_scratch(opts);
    const std::size_t per_worker_budget =
        std::max<std::size_t>(opts.spill_budget / static_cast<std::size_t>(jobs), 4096);

    const std::string prefix = "msd-spill-o" + std::to_string(child_order) + "-p" +
                               std::to_string(static_cast<unsigned long>(::getpid())) + "-";

    std::vector<CandidateSink> sinks;
    sinks.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j)
        sinks.emplace_back(stride, per_worker_budget, scratch,
                           prefix + "w" + std::to_string(j) + "-r");

    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
    auto work = [&](int worker) {
        try {
            for (std::size_t i = static_cast<std::size_t>(worker); i < prev.size();
                 i += static_cast<std::size_t>(jobs))
                emit_children(prev.decode(i), sinks[static_cast<std::size_t>(worker)]);
        } catch (...) {
            errors[static_cast<std::size_t>(worker)] = std::current_exception();
        }
    };

    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) threads.emplace_back(work, j);
        for (auto& t : threads) t.join();
    }

    // Collect run files before propagating any error so scratch gets cleaned.
    std::vector<fs::path> runs;
    bool spilled = false;
    for (const auto& sink : sinks)
        if (!sink.runs().empty()) spilled = true;

    struct ScratchCleanup {
        std::vector<fs::path>* files;
        ~ScratchCleanup() {
            std::error_code ec;
            for (const auto& p : *files) fs::remove(p, ec);
        }
    } cleanup{&runs};

    for (auto& sink : sinks)
        for (const auto& r : sink.runs()) runs.push_back(r);

    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);

    std::string blob;
    if (!spilled) {
        std::size_t total = 0;
        for (auto& sink : sinks) total += sink.blob().size();
        blob.reserve(total);
        for (auto& sink : sinks) {
            blob.append(sink.blob());
            sink.blob().clear();
        }
        sort_unique_records(blob, stride);
    } else {
        runs.clear();
        for (auto& sink : sinks) {
            sink.spill();  // flush remainders so everything merges uniformly
            for (const auto& r : sink.runs()) runs.push_back(r);
        }
        blob = merge_runs(runs, stride);
    }

    return Catalog::from_sorted_codes(child_order, std::move(blob));
}

std::vector<Catalog> enumerate_to(int n_max, const EnumOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<Catalog> out;
    out.push_back(Catalog::seed());
    while (out.back().order() < n_max) {
        try {
            out.push_back(expand_catalog(out.back(), opts));
        } catch (const std::exception& e) {
            throw std::runtime_error("enumeration stopped after completing order " +
                                     std::to_string(out.back().order()) + ": " + e.what());
        }
    }
    return out;
}

CountTable brute_force_msd_count(int n) {
    if (n < 2 || n > 5)
        throw std::invalid_argument("brute-force scan supports orders 2..5");

    // Off-diagonal positions, row-major, so a labeled digraph is one bitmask.
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            if (u != w) slots.push_back({u, w});
    const int nslots = static_cast<int>(slots.size());

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    // Adjacency bitstring (row-major over the full matrix) under a relabeling.
    auto key_under = [&](const Digraph& d, const std::vector<int>& p) {
        std::uint64_t key = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                key <<= 1;
                if (i != j && (d.out_bits(p[static_cast<std::size_t>(i)]) >>
                               p[static_cast<std::size_t>(j)]) & 1)
                    key |= 1;
            }
        return key;
    };

    std::map<std::uint64_t, int> classes;  // min key over all relabelings -> m
    std::vector<Arc> arcs;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nslots); ++mask) {
        const int m = std::popcount(mask);
        if (m < n || m > 2 * (n - 1)) continue;  // size bounds for minimal strong
        arcs.clear();
        for (int s = 0; s < nslots; ++s)
            if ((mask >> s) & 1)
                arcs.push_back({slots[static_cast<std::size_t>(s)].first,
                                slots[static_cast<std::size_t>(s)].second});
        Digraph d(n, arcs);
        if (!is_minimal_strong(d)) continue;

        std::uint64_t min_key = ~std::uint64_t{0};
        for (const auto& p : perms) min_key = std::min(min_key, key_under(d, p));
        classes.emplace(min_key, m);
    }

    CountTable table;
    for (const auto& [key, m] : classes) table.add(n, m, 1);
    return table;
}

std::vector<std::uint64_t> directed_tree_counts(std::span<const Catalog> catalogs) {
    std::vector<std::uint64_t> out;
    for (const Catalog& c : catalogs) {
        if (c.order() < 2) continue;
        out.push_back(c.counts().at(c.order(), 2 * c.order() - 2));
    }
    return out;
}

}  // namespace msd
