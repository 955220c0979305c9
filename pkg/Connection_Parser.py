"""
Connection definition files.

    # family-1 example with a rotation in the (x2, x3) plane
    dim 3
    vars x1 x2 x3
    family 1
    G[1,2,1] = -x3
    G[1,3,1] = x2

Statements are separated by newlines or ';'. `G[i,j,k] = expr` sets
Gamma^k_ij (1-based). Connections are torsion-free unless
`torsion_free false` is given; torsion-free files set the symmetric
partner G[j,i,k] automatically.
"""

import re
from dataclasses import dataclass

import numpy as np
import sympy as sp

import symexpr as sx
from connection import FAMILY_1, FAMILY_2, GENERIC, Chart, Connection, zeros


# GRAMMAR
#
# file
#   statement { separator statement }
#
# statement
#   'dim' INT
#   'vars' NAME { NAME }
#   'func' NAME '(' NAME { ',' NAME } ')'
#   'family' ( '1' | '2' | 'generic' )
#   'torsion_free' ( 'true' | 'false' )
#   'G' '[' INT ',' INT ',' INT ']' '=' expr
#
# expr     term { ('+' | '-') term }
# term     unary { ('*' | '/') unary }
# unary    '-' unary | power
# power    operand [ '^' INT ]
# operand  INT | NAME | NAME '(' args ')' | derivative | '(' expr ')'
#
# derivative
#   'd' INT '(' NAME ')' '(' NAME ')'                  one-variable function
#   'd' '[' NAME { ',' NAME } ']' '(' NAME ')' '(' args ')'


KEYWORDS = ("dim", "vars", "func", "family", "torsion_free", "G")
FAMILY_TAGS = {"1": FAMILY_1, "2": FAMILY_2, "generic": GENERIC}
DERIVATIVE_NAME = re.compile(r"^d(\d+)$")

TOKEN_SPEC = [
    ("NUMBER", r"\d+"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"[-+*/^()\[\],=;]"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("COMMENT", r"#[^\n]*"),
    ("MISMATCH", r"."),
]
TOKEN_PATTERN = re.compile("|".join(f"(?P<{name}>{rx})" for name, rx in TOKEN_SPEC))


class ConnectionSpecError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class ConnectionSyntaxError(ConnectionSpecError):
    pass


class UnknownVariableError(ConnectionSpecError):
    pass


class IndexOutOfRangeError(ConnectionSpecError):
    pass


class InconsistentSymmetryError(ConnectionSpecError):
    pass


class DimensionLimitError(ConnectionSpecError):
    pass


@dataclass(frozen=True)
class ConnectionSpec:
    dim: int
    variables: tuple            # alias names, position i names x_{i+1}
    christoffels: tuple         # (i, j, k, Expr), 1-based, sorted
    declared_family: str = None
    functions: tuple = ()       # (name, argument names)
    torsion_free: bool = True

    @property
    def names(self):
        """Canonical chart symbol -> alias, for printing."""
        return dict(zip(sx.chart_vars(self.dim), self.variables))


# ============================================================
# TOKENIZER
# ============================================================

class Token:
    def __init__(self, typ, text, line, column):
        self.typ = typ
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"({self.typ}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text):
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN_PATTERN.finditer(text):
        typ, value = match.lastgroup, match.group()
        column = match.start() - line_start + 1
        if typ == "NEWLINE":
            tokens.append(Token("SEP", value, line, column))
            line, line_start = line + 1, match.end()
        elif typ in ("SKIP", "COMMENT"):
            continue
        elif typ == "MISMATCH":
            raise ConnectionSyntaxError(f"unexpected character {value!r}", line, column)
        elif value == ";":
            tokens.append(Token("SEP", value, line, column))
        else:
            tokens.append(Token(typ, value, line, column))
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


# ============================================================
# PARSER
# ============================================================

class _Parser:
    def __init__(self, text, max_dim=None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.max_dim = max_dim
        self.dim = None
        self.aliases = {}
        self.variables = None
        self.functions = {}
        self.components = {}
        self.family = None
        self.torsion_free = True
        self.seen_body = False

    # ---------- token helpers ----------

    def peek(self, offset=0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self):
        token = self.peek()
        self.pos += 1
        return token

    def error(self, cls, message, token=None):
        token = token or self.peek()
        return cls(message, token.line, token.column)

    def expect(self, typ, text=None):
        token = self.peek()
        if token.typ != typ or (text is not None and token.text != text):
            wanted = text if text is not None else typ
            found = token.text or token.typ
            raise self.error(ConnectionSyntaxError, f"expected {wanted!r}, found {found!r}")
        return self.advance()

    def accept(self, text):
        if self.peek().typ == "OP" and self.peek().text == text:
            return self.advance()
        return None

    def integer(self):
        return int(self.expect("NUMBER").text)

    # ---------- statements ----------

    def parse(self):
        while True:
            while self.peek().typ == "SEP":
                self.advance()
            if self.peek().typ == "EOF":
                break
            self.statement()
            if self.peek().typ not in ("SEP", "EOF"):
                raise self.error(ConnectionSyntaxError, f"unexpected {self.peek().text!r} after statement")
        if self.dim is None:
            raise ConnectionSyntaxError("missing 'dim' statement", 1, 1)
        return self.build()

    def statement(self):
        token = self.expect("NAME")
        if token.text == "dim":
            return self.dim_statement(token)
        if self.dim is None:
            raise self.error(ConnectionSyntaxError, "'dim' must be the first statement", token)
        if token.text == "vars":
            return self.vars_statement(token)
        if token.text == "func":
            return self.func_statement()
        if token.text == "family":
            tag = self.advance()
            if tag.text not in FAMILY_TAGS:
                raise self.error(ConnectionSyntaxError, f"unknown family {tag.text!r}", tag)
            self.family = FAMILY_TAGS[tag.text]
            return None
        if token.text == "torsion_free":
            flag = self.expect("NAME")
            if flag.text not in ("true", "false"):
                raise self.error(ConnectionSyntaxError, "torsion_free takes true or false", flag)
            self.torsion_free = flag.text == "true"
            return None
        if token.text == "G":
            return self.christoffel_statement()
        raise self.error(ConnectionSyntaxError, f"unknown statement {token.text!r}", token)

    def dim_statement(self, token):
        if self.dim is not None:
            raise self.error(ConnectionSyntaxError, "'dim' given twice", token)
        number = self.peek()
        dim = self.integer()
        if dim < 1:
            raise self.error(ConnectionSyntaxError, "dimension must be positive", number)
        if self.max_dim is not None and dim > self.max_dim:
            raise self.error(DimensionLimitError, f"dimension {dim} exceeds the limit {self.max_dim}", number)
        self.dim = dim
        self.variables = tuple(str(v) for v in sx.chart_vars(dim))
        self.aliases = dict(zip(self.variables, sx.chart_vars(dim)))

    def vars_statement(self, token):
        if self.seen_body:
            raise self.error(ConnectionSyntaxError, "'vars' must precede functions and Christoffel symbols", token)
        names = []
        while self.peek().typ == "NAME":
            name = self.advance()
            if name.text in KEYWORDS or name.text in names:
                raise self.error(ConnectionSyntaxError, f"invalid variable name {name.text!r}", name)
            names.append(name.text)
        if len(names) != self.dim:
            raise self.error(ConnectionSyntaxError, f"'vars' needs {self.dim} names, got {len(names)}", token)
        self.variables = tuple(names)
        self.aliases = dict(zip(names, sx.chart_vars(self.dim)))

    def variable(self):
        token = self.expect("NAME")
        if token.text not in self.aliases:
            raise self.error(UnknownVariableError, f"unknown variable {token.text!r}", token)
        return self.aliases[token.text]

    def variable_list(self, close):
        args = [self.variable()]
        while self.accept(","):
            args.append(self.variable())
        self.expect("OP", close)
        return tuple(args)

    def func_statement(self):
        self.seen_body = True
        name = self.expect("NAME")
        if name.text in KEYWORDS or name.text in self.aliases or name.text in self.functions:
            raise self.error(ConnectionSyntaxError, f"invalid function name {name.text!r}", name)
        self.expect("OP", "(")
        args = self.variable_list(")")
        if len(set(args)) != len(args):
            raise self.error(ConnectionSyntaxError, f"repeated argument in {name.text}", name)
        self.functions[name.text] = sx.opaque(name.text, *args)

    def christoffel_statement(self):
        self.seen_body = True
        self.expect("OP", "[")
        indices = []
        for position in range(3):
            if position:
                self.expect("OP", ",")
            token = self.peek()
            value = self.integer()
            if not 1 <= value <= self.dim:
                raise self.error(IndexOutOfRangeError, f"index {value} outside 1..{self.dim}", token)
            indices.append(value)
        self.expect("OP", "]")
        equals = self.expect("OP", "=")
        value = sx.canonical(self.expr())
        key = tuple(indices)
        if key in self.components:
            raise self.error(ConnectionSyntaxError, f"G[{key[0]},{key[1]},{key[2]}] assigned twice", equals)
        self.components[key] = (value, equals)

    # ---------- expressions ----------

    def expr(self):
        value = self.term()
        while self.peek().typ == "OP" and self.peek().text in ("+", "-"):
            op = self.advance().text
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self):
        value = self.unary()
        while self.peek().typ == "OP" and self.peek().text in ("*", "/"):
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                value = value * right
                continue
            right = sx.canonical(right)
            if not right.is_Rational or right == 0:
                raise self.error(ConnectionSyntaxError, "division only by nonzero constants", op)
            value = value / right
        return value

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self):
        base = self.operand()
        if self.accept("^"):
            return sx.pow_int(base, self.integer())
        return base

    def operand(self):
        token = self.peek()
        if token.typ == "NUMBER":
            return sp.Integer(self.integer())
        if self.accept("("):
            value = self.expr()
            self.expect("OP", ")")
            return value
        if token.typ != "NAME":
            raise self.error(ConnectionSyntaxError, f"unexpected {token.text or token.typ!r}")
        if token.text in self.functions:
            return self.application()
        if self.is_derivative():
            return self.derivative()
        if token.text in self.aliases:
            return self.variable()
        raise self.error(UnknownVariableError, f"unknown name {token.text!r}", token)

    def application(self):
        return self.application_of(self.advance())

    def is_derivative(self):
        token, following = self.peek(), self.peek(1)
        if token.text == "d" and following.text == "[":
            return True
        return bool(DERIVATIVE_NAME.match(token.text)) and following.text == "("

    def derivative(self):
        token = self.advance()
        if self.accept("["):
            wrt = self.variable_list("]")
        else:
            wrt = None
        self.expect("OP", "(")
        fname = self.expect("NAME")
        if fname.text not in self.functions:
            raise self.error(UnknownVariableError, f"unknown function {fname.text!r}", fname)
        self.expect("OP", ")")
        atom = self.application_of(fname)
        if wrt is None:
            if len(atom.args) != 1:
                raise self.error(ConnectionSyntaxError, f"use d[...] for the multi-variable {fname.text}", token)
            order = int(DERIVATIVE_NAME.match(token.text).group(1))
            wrt = atom.args * order
        value = atom
        for v in wrt:
            value = sx.diff(value, v)
        return value

    def application_of(self, fname):
        atom = self.functions[fname.text]
        self.expect("OP", "(")
        args = self.variable_list(")")
        if args != atom.args:
            raise self.error(ConnectionSyntaxError, f"{fname.text} is declared with other arguments", fname)
        return atom

    # ---------- result ----------

    def build(self):
        components = {key: value for key, (value, _) in self.components.items()}
        if self.torsion_free:
            for (i, j, k), (value, token) in sorted(self.components.items()):
                partner = components.get((j, i, k))
                if partner is not None and not sx.is_zero(partner - value):
                    raise self.error(
                        InconsistentSymmetryError,
                        f"G[{i},{j},{k}] and G[{j},{i},{k}] differ in a torsion-free connection",
                        token,
                    )
                components[(j, i, k)] = value
        christoffels = tuple(
            (i, j, k, value) for (i, j, k), value in sorted(components.items()) if not sx.is_zero(value)
        )
        functions = tuple(
            (name, tuple(self.variables[sx.chart_index(v)] for v in atom.args))
            for name, atom in self.functions.items()
        )
        return ConnectionSpec(
            dim=self.dim,
            variables=self.variables,
            christoffels=christoffels,
            declared_family=self.family,
            functions=functions,
            torsion_free=self.torsion_free,
        )


def parse_connection_file(text, max_dim=None):
    return _Parser(text, max_dim).parse()


# ============================================================
# PRINTING AND CONVERSION
# ============================================================

def format_connection_spec(spec):
    """Text that parses back to `spec`."""
    tags = {tag: key for key, tag in FAMILY_TAGS.items()}
    lines = [f"dim {spec.dim}", "vars " + " ".join(spec.variables)]
    if spec.declared_family is not None:
        lines.append(f"family {tags[spec.declared_family]}")
    lines.append(f"torsion_free {'true' if spec.torsion_free else 'false'}")
    for name, args in spec.functions:
        lines.append(f"func {name}({','.join(args)})")
    names = spec.names
    for i, j, k, value in spec.christoffels:
        if spec.torsion_free and i > j:
            continue
        lines.append(f"G[{i},{j},{k}] = {sx.to_string(value, names)}")
    return "\n".join(lines) + "\n"


def to_connection(spec):
    gamma = zeros((spec.dim, spec.dim, spec.dim))
    for i, j, k, value in spec.christoffels:
        gamma[i - 1, j - 1, k - 1] = value
    return Connection(
        Chart.standard(spec.dim),
        np.asarray(gamma, dtype=object),
        spec.declared_family or GENERIC,
        torsion_free=spec.torsion_free,
    )
