#include "mmlogic/sat.hpp"

#include <algorithm>

namespace mmlogic::sat {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Luby sequence 1 1 2 1 1 2 4 1 1 2 ...
double luby(double y, int x) {
    int size = 1, seq = 0;
    while (size < x + 1) {
        ++seq;
        size = 2 * size + 1;
    }
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        --seq;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; ++i) r *= y;
    return r;
}

}  // namespace

int CdclSolver::new_var() {
    const int v = var_count();
    assign_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    seen_.push_back(0);
    model_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    if (seed_ != 0) {
        const std::uint64_t h = splitmix(seed_ ^ splitmix(static_cast<std::uint64_t>(v)));
        activity_.push_back(static_cast<double>(h % 1000) * 1e-6);
        phase_.push_back(static_cast<char>((h >> 20) & 1));
    } else {
        activity_.push_back(0.0);
        phase_.push_back(0);
    }
    heap_pos_.push_back(-1);
    heap_insert(v);
    return v;
}

void CdclSolver::enqueue(Lit l, int reason) {
    const auto v = static_cast<std::size_t>(var_of(l));
    assign_[v] = (l & 1) ? -1 : 1;
    level_[v] = level();
    reason_[v] = reason;
    trail_.push_back(l);
}

int CdclSolver::attach(std::vector<Lit> clause) {
    const int idx = static_cast<int>(clauses_.size());
    watches_[static_cast<std::size_t>(clause[0])].push_back(idx);
    watches_[static_cast<std::size_t>(clause[1])].push_back(idx);
    clauses_.push_back(std::move(clause));
    return idx;
}

void CdclSolver::add_clause(std::vector<Lit> clause) {
    if (unsat_) return;
    cancel_until(0);
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < clause.size(); ++i) {
        const Lit l = clause[i];
        if (i + 1 < clause.size() && clause[i + 1] == negate(l)) return;  // tautology
        const int val = lit_value(l);
        if (val == 1) return;
        if (val == 0) kept.push_back(l);
    }
    if (kept.empty()) {
        unsat_ = true;
    } else if (kept.size() == 1) {
        enqueue(kept[0], -1);
        if (propagate() != -1) unsat_ = true;
    } else {
        attach(std::move(kept));
    }
}

int CdclSolver::propagate() {
    while (qhead_ < trail_.size()) {
        const Lit false_lit = negate(trail_[qhead_++]);
        auto& ws = watches_[static_cast<std::size_t>(false_lit)];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            const int ci = ws[i++];
            auto& c = clauses_[static_cast<std::size_t>(ci)];
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            if (lit_value(c[0]) == 1) {
                ws[j++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (lit_value(c[k]) != -1) {
                    std::swap(c[1], c[k]);
                    watches_[static_cast<std::size_t>(c[1])].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = ci;
            if (lit_value(c[0]) == -1) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        ws.resize(j);
    }
    return -1;
}

void CdclSolver::analyze(int conflict, std::vector<Lit>& learnt, int& back_level) {
    learnt.assign(1, 0);
    int path = 0;
    Lit p = -1;
    std::size_t idx = trail_.size();
    for (;;) {
        const auto& c = clauses_[static_cast<std::size_t>(conflict)];
        for (std::size_t j = (p == -1 ? 0 : 1); j < c.size(); ++j) {
            const Lit q = c[j];
            const auto v = static_cast<std::size_t>(var_of(q));
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            bump(static_cast<int>(v));
            if (level_[v] >= level()) ++path;
            else learnt.push_back(q);
        }
        do {
            --idx;
        } while (!seen_[static_cast<std::size_t>(var_of(trail_[idx]))]);
        p = trail_[idx];
        conflict = reason_[static_cast<std::size_t>(var_of(p))];
        seen_[static_cast<std::size_t>(var_of(p))] = 0;
        if (--path == 0) break;
    }
    learnt[0] = negate(p);

    back_level = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
        const int lv = level_[static_cast<std::size_t>(var_of(learnt[i]))];
        if (lv > back_level) {
            back_level = lv;
            max_i = i;
        }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
    for (Lit l : learnt) seen_[static_cast<std::size_t>(var_of(l))] = 0;
}

void CdclSolver::cancel_until(int lvl) {
    if (level() <= lvl) return;
    const std::size_t stop = trail_lim_[static_cast<std::size_t>(lvl)];
    for (std::size_t i = trail_.size(); i-- > stop;) {
        const auto v = static_cast<std::size_t>(var_of(trail_[i]));
        phase_[v] = assign_[v] > 0;
        assign_[v] = 0;
        reason_[v] = -1;
        heap_insert(static_cast<int>(v));
    }
    trail_.resize(stop);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = trail_.size();
}

void CdclSolver::bump(int var) {
    auto& a = activity_[static_cast<std::size_t>(var)];
    a += inc_;
    if (a > 1e100) {
        for (auto& x : activity_) x *= 1e-100;
        inc_ *= 1e-100;
    }
    if (heap_pos_[static_cast<std::size_t>(var)] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[static_cast<std::size_t>(var)]));
}

void CdclSolver::heap_insert(int var) {
    if (heap_pos_[static_cast<std::size_t>(var)] >= 0) return;
    heap_pos_[static_cast<std::size_t>(var)] = static_cast<int>(heap_.size());
    heap_.push_back(var);
    heap_up(heap_.size() - 1);
}

void CdclSolver::heap_up(std::size_t i) {
    const int v = heap_[i];
    // Ties go to the smaller variable so that search order is reproducible.
    auto better = [this](int a, int b) {
        const double x = activity_[static_cast<std::size_t>(a)], y = activity_[static_cast<std::size_t>(b)];
        return x > y || (x == y && a < b);
    };
    while (i > 0) {
        const std::size_t parent = (i - 1) / 2;
        if (!better(v, heap_[parent])) break;
        heap_[i] = heap_[parent];
        heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void CdclSolver::heap_down(std::size_t i) {
    const int v = heap_[i];
    auto better = [this](int a, int b) {
        const double x = activity_[static_cast<std::size_t>(a)], y = activity_[static_cast<std::size_t>(b)];
        return x > y || (x == y && a < b);
    };
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= heap_.size()) break;
        if (child + 1 < heap_.size() && better(heap_[child + 1], heap_[child])) ++child;
        if (!better(heap_[child], v)) break;
        heap_[i] = heap_[child];
        heap_pos_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
        i = child;
    }
    heap_[i] = v;
    heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

int CdclSolver::heap_pop() {
    const int top = heap_[0];
    heap_pos_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<std::size_t>(last)] = 0;
        heap_down(0);
    }
    return top;
}

int CdclSolver::pick_branch() {
    while (!heap_.empty()) {
        const int v = heap_pop();
        if (assign_[static_cast<std::size_t>(v)] == 0) return v;
    }
    return -1;
}

Status CdclSolver::solve(std::optional<Clock::time_point> deadline) {
    if (unsat_) return Status::unsat;
    cancel_until(0);
    if (propagate() != -1) {
        unsat_ = true;
        return Status::unsat;
    }
    std::vector<Lit> learnt;
    int restart = 0;
    std::uint64_t budget = static_cast<std::uint64_t>(luby(2, restart) * 100), in_restart = 0;
    std::uint64_t steps = 0;
    for (;;) {
        if (deadline && (++steps & 255) == 0 && Clock::now() > *deadline) {
            cancel_until(0);
            return Status::unknown;
        }
        const int conflict = propagate();
        if (conflict != -1) {
            ++conflicts_;
            ++in_restart;
            if (level() == 0) {
                unsat_ = true;
                return Status::unsat;
            }
            int back = 0;
            analyze(conflict, learnt, back);
            cancel_until(back);
            if (learnt.size() == 1) {
                enqueue(learnt[0], -1);
            } else {
                const int idx = attach(learnt);
                enqueue(learnt[0], idx);
            }
            inc_ /= 0.95;
            continue;
        }
        if (in_restart >= budget) {
            cancel_until(0);
            in_restart = 0;
            budget = static_cast<std::uint64_t>(luby(2, ++restart) * 100);
            continue;
        }
        const int v = pick_branch();
        if (v == -1) {
            for (std::size_t i = 0; i < assign_.size(); ++i) model_[i] = assign_[i] > 0;
            cancel_until(0);
            return Status::sat;
        }
        ++decisions_;
        trail_lim_.push_back(trail_.size());
        enqueue(phase_[static_cast<std::size_t>(v)] ? pos(v) : neg(v), -1);
    }
}

}  // namespace mmlogic::sat
