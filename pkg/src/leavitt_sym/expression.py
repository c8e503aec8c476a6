import re
from dataclasses import dataclass
from typing import Any, List, Tuple, Union

import pyparsing as pp
import sympy

from .algebra import AlgebraElement, gen_p, mul, path_element, unit
from .errors import ExpressionSyntaxError
from .graph import DirectedMultigraph, Path

GENERATOR = re.compile(r"^(S\*|S|P)\(\s*([^()]*?)\s*\)$")

Value = Union[sympy.Rational, AlgebraElement]


@dataclass(frozen=True)
class Node:
    kind: str  # "num", "gen", "neg", "mul" or "add"
    text: str
    position: int
    children: Tuple[Any, ...] = ()


def _leaf(kind: str) -> Any:
    return lambda s, loc, toks: Node(kind, toks[0], loc)


def _negate(s: str, loc: int, toks: pp.ParseResults) -> Node:
    sign, inner = toks[0], toks[1]
    return inner if sign == "+" else Node("neg", sign, loc, (inner,))


def _product(s: str, loc: int, toks: pp.ParseResults) -> Node:
    factors = [t for t in toks if isinstance(t, Node)]
    return factors[0] if len(factors) == 1 else Node("mul", "*", loc, tuple(factors))


def _sum(s: str, loc: int, toks: pp.ParseResults) -> Node:
    items = list(toks)
    if len(items) == 1:
        return items[0]
    signed = [("+", items[0])] + [(items[i], items[i + 1]) for i in range(1, len(items), 2)]
    return Node("add", "+", loc, tuple(signed))


def _grammar() -> pp.ParserElement:
    """Sums of terms; a term is a product of signed factors, with `*`, `·` or plain juxtaposition."""
    expr = pp.Forward()
    generator = pp.Regex(r"(?:S\*|S|P)\(\s*[^()]*?\s*\)").set_parse_action(_leaf("gen"))
    number = pp.Regex(r"\d+(?:/\d+)?").set_parse_action(_leaf("num"))
    group = pp.Suppress("(") + expr + pp.Suppress(")")
    factor = generator | number | group
    unary = pp.Forward()
    unary <<= (pp.one_of("+ -") + unary).set_parse_action(_negate) | factor
    term = (unary + pp.ZeroOrMore((pp.one_of("* ·") + unary) | factor)).set_parse_action(_product)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") + term)).set_parse_action(_sum)
    return expr


EXPRESSION = _grammar()


class ExpressionParser:
    """Parses with the pyparsing grammar, then evaluates the tree over a graph with exact rationals."""

    def __init__(self, graph: DirectedMultigraph, text: str) -> None:
        self.graph = graph
        self.text = text

    def parse(self) -> AlgebraElement:
        if not self.text.strip():
            raise ExpressionSyntaxError("empty expression")
        try:
            tree = EXPRESSION.parse_string(self.text, parse_all=True)[0]
        except pp.ParseBaseException as e:
            raise ExpressionSyntaxError(f"unexpected input near '{self.text[e.loc:e.loc + 12]}'", e.loc) from None
        return self._as_element(self._evaluate(tree))

    def _as_element(self, value: Value) -> AlgebraElement:
        if isinstance(value, AlgebraElement):
            return value
        return unit(self.graph).scale(value)

    def _add(self, left: Value, right: Value, sign: int) -> Value:
        if not isinstance(left, AlgebraElement) and not isinstance(right, AlgebraElement):
            return left + sign * right
        right_el = self._as_element(right)
        return self._as_element(left) + (right_el if sign > 0 else -right_el)

    def _mul(self, left: Value, right: Value) -> Value:
        if isinstance(left, AlgebraElement) and isinstance(right, AlgebraElement):
            return mul(left, right)
        if isinstance(left, AlgebraElement):
            return left.scale(right)
        if isinstance(right, AlgebraElement):
            return right.scale(left)
        return left * right

    def _evaluate(self, node: Node) -> Value:
        if node.kind == "num":
            return self._number(node)
        if node.kind == "gen":
            return self._generator(node)
        if node.kind == "neg":
            return -self._evaluate(node.children[0])
        if node.kind == "mul":
            value = self._evaluate(node.children[0])
            for child in node.children[1:]:
                value = self._mul(value, self._evaluate(child))
            return value
        values: List[Tuple[str, Value]] = [(sign, self._evaluate(child)) for sign, child in node.children]
        total = values[0][1]
        for sign, value in values[1:]:
            total = self._add(total, value, 1 if sign == "+" else -1)
        return total

    def _number(self, node: Node) -> sympy.Rational:
        numerator, _, denominator = node.text.partition("/")
        if denominator and int(denominator) == 0:
            raise ExpressionSyntaxError("division by zero", node.position)
        return sympy.Rational(int(numerator), int(denominator or 1))

    def _generator(self, node: Node) -> AlgebraElement:
        match = GENERATOR.match(node.text)
        if not match:
            raise ExpressionSyntaxError(f"malformed generator '{node.text}'", node.position)
        kind, body = match.group(1), match.group(2)
        g = self.graph
        if not body:
            raise ExpressionSyntaxError(f"generator '{node.text}' needs an argument", node.position)
        if kind == "P":
            return gen_p(g, body)
        edges = [part.strip() for part in body.split(".")]
        if any(not part for part in edges):
            raise ExpressionSyntaxError(f"malformed path '{body}'", node.position)
        path = g.make_path(edges)
        end = Path(g.path_range(path), ())
        if kind == "S":
            return path_element(g, path, end)
        return path_element(g, end, path)


def parse_expression(g: DirectedMultigraph, text: str) -> AlgebraElement:
    return ExpressionParser(g, text).parse()
