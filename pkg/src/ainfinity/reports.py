"""Residual reports.

Checkers never raise on mathematical failure; they return the residual maps
so tests can assert exact zero and a failing run can point at the offending
basis tuple.
"""


class CheckReport:
    """Keyed collection of residual objects (anything with is_zero())."""

    def __init__(self, name):
        self.name = name
        self.residuals = {}

    def add(self, key, residual):
        self.residuals[key] = residual

    @property
    def ok(self):
        return all(r.is_zero() for r in self.residuals.values())

    def is_zero(self):
        # reports nest: a report is itself a residual-like object
        return self.ok

    def failing(self):
        return sorted(k for k, r in self.residuals.items() if not r.is_zero())

    def entry_count(self, key=None):
        if key is None:
            return sum(self.entry_count(k) for k in self.residuals)
        r = self.residuals[key]
        return r.entry_count() if hasattr(r, "entry_count") else (0 if r.is_zero() else 1)

    def first_word(self):
        bad = self.failing()
        return bad[0] if bad else None

    def first_offender(self, key):
        r = self.residuals[key]
        return r.first_word() if hasattr(r, "first_word") else None

    def lines(self):
        out = []
        for key in sorted(self.residuals):
            out.append("check.%s.%s.nonzero=%d" % (self.name, key, self.entry_count(key)))
        return out

    def detail_lines(self):
        out = []
        for key in self.failing():
            out.append("%s[%s]: %d nonzero entries, first offender %r"
                       % (self.name, key, self.entry_count(key), self.first_offender(key)))
        return out

    def __repr__(self):
        status = "ok" if self.ok else ("failing=%r" % self.failing())
        return "CheckReport(%s, %s)" % (self.name, status)


class BoolResidual:
    """Adapter so plain pass/fail facts can live in a CheckReport."""

    def __init__(self, passed, note=""):
        self.passed = passed
        self.note = note

    def is_zero(self):
        return self.passed

    def entry_count(self):
        return 0 if self.passed else 1

    def first_word(self):
        return self.note or None
