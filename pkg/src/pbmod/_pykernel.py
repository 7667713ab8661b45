"""Pure-Python propagation and DPLL kernel.

Same interface and search order as the compiled ``_kernel`` extension; used
when the extension is not built or PBMOD_PURE_PYTHON is set.
"""

SAT = 1
UNSAT = 0
LIMIT = -1


class Kernel:
    def __init__(self, clauses, num_vars):
        self.num_vars = num_vars
        self.clauses = []
        self.units = []
        self.has_empty = False
        size = 2 * (num_vars + 1)
        self.watches = [[] for _ in range(size)]
        for clause in clauses:
            lits = list(clause)
            for l in lits:
                if abs(l) > num_vars:
                    raise ValueError("literal %d exceeds num_vars %d" % (l, num_vars))
            if not lits:
                self.has_empty = True
            elif len(lits) == 1:
                self.units.append(lits[0])
            else:
                idx = len(self.clauses)
                self.clauses.append(lits)
                self.watches[self._index(lits[0])].append(idx)
                self.watches[self._index(lits[1])].append(idx)
        self.assign = [0] * (num_vars + 1)
        self.trail = []
        self.qhead = 0

    @staticmethod
    def _index(l):
        return 2 * l if l > 0 else -2 * l + 1

    def _value(self, l):
        a = self.assign[abs(l)]
        return a if l > 0 else -a

    def _enqueue(self, l):
        self.assign[abs(l)] = 1 if l > 0 else -1
        self.trail.append(l)

    def _undo(self, size):
        assign = self.assign
        trail = self.trail
        while len(trail) > size:
            assign[abs(trail.pop())] = 0
        if self.qhead > size:
            self.qhead = size

    def _propagate(self):
        """Returns the index of a conflicting clause, or -1."""
        assign = self.assign
        clauses = self.clauses
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches[self._index(false_lit)]
            i = 0
            while i < len(ws):
                c = ws[i]
                lits = clauses[c]
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], lits[0]
                first = lits[0]
                a = assign[abs(first)]
                if (a if first > 0 else -a) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    l = lits[k]
                    a = assign[abs(l)]
                    if (a if l > 0 else -a) != -1:
                        lits[1], lits[k] = l, lits[1]
                        watches[self._index(l)].append(c)
                        ws[i] = ws[-1]
                        ws.pop()
                        moved = True
                        break
                if moved:
                    continue
                a = assign[abs(first)]
                if (a if first > 0 else -a) == -1:
                    return c
                self._enqueue(first)
                i += 1
        return -1

    def _start(self, assumptions):
        """Reset and assert units plus assumptions at level zero."""
        self._undo(0)
        self.qhead = 0
        if self.has_empty:
            return -2
        for l in assumptions:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError("bad assumption literal %d" % l)
        for l in list(self.units) + list(assumptions):
            v = self._value(l)
            if v == -1:
                return -2
            if v == 0:
                self._enqueue(l)
        return self._propagate()

    def propagate(self, assumptions):
        """(conflict clause index or -1, assigned literals)."""
        conflict = self._start(assumptions)
        return conflict, list(self.trail)

    def solve(self, assumptions, max_decisions=-1):
        """(status, model) with status SAT / UNSAT / LIMIT."""
        status = self.check(assumptions, max_decisions)
        if status != SAT:
            return status, None
        assign = self.assign
        return SAT, [u if assign[u] > 0 else -u for u in range(1, self.num_vars + 1)]

    def check(self, assumptions, max_decisions=-1):
        """Status only; on SAT the model stays on the trail until the next call."""
        if self._start(assumptions) != -1:
            return UNSAT
        decisions = []  # [trail size before decision, variable, flipped]
        decided = 0
        assign = self.assign
        n = self.num_vars
        while True:
            v = 1
            while v <= n and assign[v] != 0:
                v += 1
            if v > n:
                return SAT
            decided += 1
            if 0 <= max_decisions < decided:
                self._undo(0)
                return LIMIT
            decisions.append([len(self.trail), v, False])
            self._enqueue(-v)
            while self._propagate() != -1:
                while decisions and decisions[-1][2]:
                    decisions.pop()
                if not decisions:
                    return UNSAT
                top = decisions[-1]
                self._undo(top[0])
                top[2] = True
                self._enqueue(top[1])
