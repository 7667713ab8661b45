# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation and DPLL kernel (two watched literals).

Mirrors ``_pykernel`` operation for operation so both give the same
trails, conflicts and models.
"""

from libcpp.vector cimport vector

SAT = 1
UNSAT = 0
LIMIT = -1


cdef inline int lit_index(int l) noexcept nogil:
    return 2 * l if l > 0 else -2 * l + 1


cdef class Kernel:
    cdef public int num_vars
    cdef vector[int] lits
    cdef vector[int] start
    cdef vector[int] size
    cdef vector[int] units
    cdef vector[vector[int]] watches
    cdef vector[int] assign
    cdef vector[int] trail
    cdef size_t qhead
    cdef bint has_empty

    def __init__(self, clauses, int num_vars):
        cdef int l
        self.num_vars = num_vars
        self.has_empty = False
        self.watches.resize(2 * (num_vars + 1))
        self.assign.resize(num_vars + 1, 0)
        self.qhead = 0
        for clause in clauses:
            c = list(clause)
            for l in c:
                if abs(l) > num_vars:
                    raise ValueError("literal %d exceeds num_vars %d" % (l, num_vars))
            if not c:
                self.has_empty = True
            elif len(c) == 1:
                self.units.push_back(c[0])
            else:
                idx = self.start.size()
                self.start.push_back(self.lits.size())
                self.size.push_back(len(c))
                for l in c:
                    self.lits.push_back(l)
                self.watches[lit_index(c[0])].push_back(idx)
                self.watches[lit_index(c[1])].push_back(idx)

    cdef inline int value(self, int l) noexcept nogil:
        if l > 0:
            return self.assign[l]
        return -self.assign[-l]

    cdef inline void enqueue(self, int l) noexcept nogil:
        if l > 0:
            self.assign[l] = 1
        else:
            self.assign[-l] = -1
        self.trail.push_back(l)

    cdef void undo(self, size_t target) noexcept nogil:
        cdef int l
        while self.trail.size() > target:
            l = self.trail.back()
            self.trail.pop_back()
            if l < 0:
                l = -l
            self.assign[l] = 0
        if self.qhead > target:
            self.qhead = target

    cdef int run(self) noexcept nogil:
        cdef int p, false_lit, c, first, l, tmp
        cdef size_t i, k, base, n
        cdef vector[int]* ws
        cdef bint moved
        while self.qhead < self.trail.size():
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = &self.watches[lit_index(false_lit)]
            i = 0
            while i < ws.size():
                c = ws[0][i]
                base = self.start[c]
                n = self.size[c]
                if self.lits[base] == false_lit:
                    self.lits[base] = self.lits[base + 1]
                    self.lits[base + 1] = false_lit
                first = self.lits[base]
                if self.value(first) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, n):
                    l = self.lits[base + k]
                    if self.value(l) != -1:
                        tmp = self.lits[base + 1]
                        self.lits[base + 1] = l
                        self.lits[base + k] = tmp
                        self.watches[lit_index(l)].push_back(c)
                        ws[0][i] = ws.back()
                        ws.pop_back()
                        moved = True
                        break
                if moved:
                    continue
                if self.value(first) == -1:
                    return c
                self.enqueue(first)
                i += 1
        return -1

    cdef int begin(self, assumptions) except -3:
        cdef int l, v
        self.undo(0)
        self.qhead = 0
        if self.has_empty:
            return -2
        for l in self.units:
            v = self.value(l)
            if v == -1:
                return -2
            if v == 0:
                self.enqueue(l)
        for l in assumptions:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError("bad assumption literal %d" % l)
            v = self.value(l)
            if v == -1:
                return -2
            if v == 0:
                self.enqueue(l)
        return self.run()

    def propagate(self, assumptions):
        """(conflict clause index or -1, assigned literals)."""
        conflict = self.begin(assumptions)
        return conflict, [l for l in self.trail]

    def solve(self, assumptions, long long max_decisions=-1):
        """(status, model) with status SAT / UNSAT / LIMIT."""
        status = self.check(assumptions, max_decisions)
        if status != SAT:
            return status, None
        return SAT, [u if self.assign[u] > 0 else -u for u in range(1, self.num_vars + 1)]

    def check(self, assumptions, long long max_decisions=-1):
        """Status only; on SAT the model stays on the trail until the next call."""
        cdef vector[size_t] marks
        cdef vector[int] dvars
        cdef vector[char] flipped
        cdef long long decided = 0
        cdef int v, n = self.num_vars
        if self.begin(assumptions) != -1:
            return UNSAT
        with nogil:
            while True:
                v = 1
                while v <= n and self.assign[v] != 0:
                    v += 1
                if v > n:
                    break
                decided += 1
                if 0 <= max_decisions < decided:
                    self.undo(0)
                    v = -1
                    break
                marks.push_back(self.trail.size())
                dvars.push_back(v)
                flipped.push_back(0)
                self.enqueue(-v)
                while self.run() != -1:
                    while flipped.size() and flipped.back():
                        marks.pop_back()
                        dvars.pop_back()
                        flipped.pop_back()
                    if flipped.size() == 0:
                        v = 0
                        break
                    self.undo(marks.back())
                    flipped[flipped.size() - 1] = 1
                    self.enqueue(dvars.back())
                if v == 0:
                    break
        if v == -1:
            return LIMIT
        if v == 0:
            return UNSAT
        return SAT
