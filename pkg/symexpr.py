"""
Exact symbolic expressions for the tensor engine.

Every expression is a sympy expression kept in canonical form: a fully
expanded polynomial with exact rational coefficients in four kinds of atoms

    chart variables        x1, x2, ...
    direction parameters   a1, a2, ...      (components of X = sum a_i d_i)
    spectral variable      lam
    parameters             any other symbol (e.g. the beta of a rescaling)
    opaque functions       f(x1), f1(x1, x2, x3) and their partial derivatives

Opaque function atoms and all their derivatives are treated as algebraically
independent indeterminates, so zero testing is emptiness of the expanded form.
A nonzero verdict is therefore a statement about generic functions; substitute
concrete functions before checking a specific example.
"""

import re
from fractions import Fraction

import sympy as sp
from sympy.core.function import AppliedUndef


# ============================================================
# CONFIG
# ============================================================

LAMBDA = sp.Symbol("lam")

CHART_PATTERN = re.compile(r"^x(\d+)$")
DIRECTION_PATTERN = re.compile(r"^a(\d+)$")

# atom kinds, in their total order
KIND_CHART = "chart"
KIND_DIRECTION = "direction"
KIND_SPECTRAL = "spectral"
KIND_PARAMETER = "parameter"
KIND_FUNCTION = "function"

KIND_RANK = {
    KIND_CHART: 0,
    KIND_DIRECTION: 1,
    KIND_SPECTRAL: 2,
    KIND_PARAMETER: 3,
    KIND_FUNCTION: 4,
}


# ============================================================
# ERRORS
# ============================================================

class SymExprError(ValueError):
    pass


class MissingDerivativeBindingError(SymExprError):
    pass


class UnboundAtomError(SymExprError):
    pass


# ============================================================
# ATOM CONSTRUCTORS
# ============================================================

def chart_var(i):
    """1-based chart variable x_i."""
    if i < 1:
        raise SymExprError(f"chart variable index must be >= 1, got {i}")
    return sp.Symbol(f"x{i}")


def direction(i):
    """1-based direction parameter a_i."""
    if i < 1:
        raise SymExprError(f"direction index must be >= 1, got {i}")
    return sp.Symbol(f"a{i}")


def chart_vars(n):
    return tuple(chart_var(i) for i in range(1, n + 1))


def directions(n):
    return tuple(direction(i) for i in range(1, n + 1))


def parameter(name):
    symbol = sp.Symbol(name)
    if atom_kind(symbol) != KIND_PARAMETER:
        raise SymExprError(f"'{name}' is reserved for chart, direction or spectral atoms")
    return symbol


def opaque(name, *variables):
    """Opaque smooth function `name` applied to distinct chart variables."""
    if not variables:
        raise SymExprError(f"opaque function '{name}' needs at least one argument")
    for v in variables:
        if atom_kind(v) != KIND_CHART:
            raise SymExprError(f"opaque function '{name}' argument {v} is not a chart variable")
    if len(set(variables)) != len(variables):
        raise SymExprError(f"opaque function '{name}' has repeated arguments")
    return sp.Function(name)(*variables)


def chart_index(symbol):
    """0-based position of a chart variable."""
    match = CHART_PATTERN.match(symbol.name)
    if match is None:
        raise SymExprError(f"{symbol} is not a chart variable")
    return int(match.group(1)) - 1


# ============================================================
# CANONICAL ARITHMETIC
# ============================================================

def canonical(e):
    e = sp.sympify(e)
    if e.has(sp.Float):
        raise SymExprError(f"floating coefficients are not allowed: {e}")
    return sp.expand(e)


def const(value):
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return canonical(sp.Rational(value))


def add(a, b):
    return canonical(a + b)


def mul(a, b):
    return canonical(a * b)


def neg(a):
    return canonical(-a)


def pow_int(a, k):
    if not isinstance(k, int) or k < 0:
        raise SymExprError(f"exponent must be a non-negative integer, got {k!r}")
    return canonical(sp.Pow(a, k))


def diff(e, v):
    if atom_kind(v) != KIND_CHART:
        raise SymExprError(f"can only differentiate along chart variables, got {v}")
    return canonical(sp.diff(e, v))


def is_zero(e):
    return canonical(e) == 0


# ============================================================
# ATOMS
# ============================================================

def atom_kind(atom):
    if isinstance(atom, (AppliedUndef, sp.Derivative)):
        return KIND_FUNCTION
    if isinstance(atom, sp.Symbol):
        if atom == LAMBDA:
            return KIND_SPECTRAL
        if CHART_PATTERN.match(atom.name):
            return KIND_CHART
        if DIRECTION_PATTERN.match(atom.name):
            return KIND_DIRECTION
        return KIND_PARAMETER
    raise SymExprError(f"{atom!r} is not an atom")


def _function_parts(atom):
    """(base application, ((variable, count), ...)) of a function atom."""
    if isinstance(atom, sp.Derivative):
        counts = tuple((v, int(c)) for v, c in atom.variable_count)
        return atom.expr, counts
    return atom, ()


def derivative_order(atom):
    if isinstance(atom, sp.Derivative):
        return int(atom.derivative_count)
    return 0


def function_name(atom):
    base, _ = _function_parts(atom)
    return str(base.func)


def atom_key(atom):
    kind = atom_kind(atom)
    if kind == KIND_CHART:
        return (KIND_RANK[kind], "x", int(CHART_PATTERN.match(atom.name).group(1)), ())
    if kind == KIND_DIRECTION:
        return (KIND_RANK[kind], "a", int(DIRECTION_PATTERN.match(atom.name).group(1)), ())
    if kind in (KIND_SPECTRAL, KIND_PARAMETER):
        return (KIND_RANK[kind], atom.name, 0, ())
    base, counts = _function_parts(atom)
    args = tuple(chart_index(v) for v in base.args)
    wrt = tuple((chart_index(v), c) for v, c in counts)
    return (KIND_RANK[kind], str(base.func), derivative_order(atom), (args, wrt))


def atoms_of(e):
    """Atoms occurring in e, sorted by the total atom order."""
    found = set()
    stack = [sp.sympify(e)]
    while stack:
        node = stack.pop()
        if isinstance(node, (sp.Symbol, AppliedUndef, sp.Derivative)):
            found.add(node)
        elif not node.is_Number:
            stack.extend(node.args)
    return sorted(found, key=atom_key)


def chart_vars_of(e):
    """Chart variables e depends on, including through opaque atoms."""
    return {s for s in sp.sympify(e).free_symbols if atom_kind(s) == KIND_CHART}


# ============================================================
# MONOMIALS
# ============================================================

def terms(e):
    """
    Canonical terms of e as (coefficient, ((atom, exponent), ...)) in graded
    lexicographic order over the total atom order.
    """
    e = canonical(e)
    if e == 0:
        return []
    order = atoms_of(e)
    position = {a: i for i, a in enumerate(order)}
    rows = []
    for term in sp.Add.make_args(e):
        coeff, rest = term.as_coeff_Mul()
        powers = []
        for factor in sp.Mul.make_args(rest):
            if factor == 1:
                continue
            base, exp = factor.as_base_exp()
            powers.append((base, int(exp)))
        powers.sort(key=lambda p: position[p[0]])
        exps = [0] * len(order)
        for base, exp in powers:
            exps[position[base]] = exp
        rows.append((-sum(exps), tuple(-x for x in exps), sp.Rational(coeff), tuple(powers)))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [(coeff, powers) for _, _, coeff, powers in rows]


def coefficients(e, gens):
    """
    Group e by monomials in `gens`. Returns {exponent tuple: coefficient Expr}
    with only nonzero coefficients.
    """
    gens = tuple(gens)
    grouped = {}
    for term in sp.Add.make_args(canonical(e)):
        if term == 0:
            continue
        exps = [0] * len(gens)
        rest = []
        for factor in sp.Mul.make_args(term):
            base, exp = factor.as_base_exp()
            if base in gens:
                exps[gens.index(base)] += int(exp)
            else:
                rest.append(factor)
        key = tuple(exps)
        grouped[key] = grouped.get(key, 0) + sp.Mul(*rest)
    return {k: canonical(v) for k, v in grouped.items() if not is_zero(v)}


def is_homogeneous(e, gens, degree):
    return all(sum(k) == degree for k in coefficients(e, gens))


def proportionality(a, b):
    """Rational r with a == r*b, or None."""
    a, b = canonical(a), canonical(b)
    if a == 0 or b == 0:
        return sp.S.One if a == b else None
    (ca, ma), (cb, mb) = terms(a)[0], terms(b)[0]
    if ma != mb:
        return None
    ratio = ca / cb
    return ratio if is_zero(a - ratio * b) else None


# ============================================================
# SUBSTITUTION AND EVALUATION
# ============================================================

def _derive_binding(atom, bindings):
    """Binding for a derivative atom from a binding of a lower derivative."""
    base, counts = _function_parts(atom)
    if base in bindings:
        return sp.diff(bindings[base], *atom.variables)
    wanted = {v: c for v, c in counts}
    for key, value in bindings.items():
        if not isinstance(key, sp.Derivative) or key.expr != base:
            continue
        have = {v: int(c) for v, c in key.variable_count}
        if all(wanted.get(v, 0) >= c for v, c in have.items()):
            rest = []
            for v, c in wanted.items():
                rest.extend([v] * (c - have.get(v, 0)))
            return sp.diff(value, *rest) if rest else value
    return None


def substitute(e, bindings):
    """
    Replace atoms by expressions. Binding an opaque function application also
    binds all of its derivatives (by differentiating the binding).
    """
    e = canonical(e)
    bindings = {k: canonical(v) for k, v in bindings.items()}
    for key in bindings:
        atom_kind(key)
    rules = {}
    for atom in atoms_of(e):
        if atom in bindings:
            rules[atom] = bindings[atom]
            continue
        if not isinstance(atom, sp.Derivative):
            continue
        bound_function = any(
            _function_parts(k)[0] == atom.expr for k in bindings if atom_kind(k) == KIND_FUNCTION
        )
        if not bound_function:
            continue
        value = _derive_binding(atom, bindings)
        if value is None:
            raise MissingDerivativeBindingError(
                f"cannot derive a binding for {to_string(atom)} from the given bindings"
            )
        rules[atom] = value

    replaced_vars = {k for k in bindings if atom_kind(k) == KIND_CHART}
    if replaced_vars:
        for atom in atoms_of(e):
            if atom_kind(atom) == KIND_FUNCTION and atom not in rules:
                if replaced_vars & _function_parts(atom)[0].free_symbols:
                    raise SymExprError(
                        f"cannot substitute a chart variable under opaque atom {to_string(atom)}"
                    )
    return canonical(e.xreplace(rules))


def _number(value):
    if isinstance(value, float):
        return sp.Float(value)
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.sympify(value)


def _require_bound(e, point):
    missing = [a for a in atoms_of(e) if a not in point]
    if missing:
        raise UnboundAtomError(
            "no value for atoms: " + ", ".join(to_string(a) for a in missing)
        )


def eval_numeric(e, point):
    """Float value of e at `point` (atom -> number)."""
    e = canonical(e)
    _require_bound(e, point)
    # xreplace matches whole derivative atoms before their inner applications
    values = {a: _number(v) for a, v in point.items()}
    return float(e.xreplace(values))


def eval_exact(e, point):
    """Rational value of e at a point of integers or Fractions."""
    e = canonical(e)
    _require_bound(e, point)
    return sp.Rational(e.xreplace({a: const(v) for a, v in point.items()}))


# ============================================================
# PRINTING
# ============================================================

def atom_to_string(atom, names=None):
    names = names or {}
    if isinstance(atom, sp.Symbol):
        return names.get(atom, atom.name)
    base, counts = _function_parts(atom)
    args = ",".join(names.get(v, v.name) for v in base.args)
    fname = str(base.func)
    if not counts:
        return f"{fname}({args})"
    if len(base.args) == 1:
        return f"d{derivative_order(atom)}({fname})({args})"
    wrt = ",".join(names.get(v, v.name) for v, c in counts for _ in range(c))
    return f"d[{wrt}]({fname})({args})"


def _coefficient_to_string(q):
    q = sp.Rational(q)
    return str(q.p) if q.q == 1 else f"{q.p}/{q.q}"


def to_string(e, names=None):
    """
    Deterministic ASCII form, e.g. `2*x1*x4 - 1/2*f(x1)^2 + 3`.
    `names` optionally renames symbols (chart aliases).
    """
    rows = terms(e)
    if not rows:
        return "0"
    pieces = []
    for n, (coeff, powers) in enumerate(rows):
        factors = [
            atom_to_string(a, names) + (f"^{k}" if k > 1 else "") for a, k in powers
        ]
        magnitude = abs(coeff)
        if not factors:
            body = _coefficient_to_string(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coefficient_to_string(magnitude)] + factors)
        if n == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)
