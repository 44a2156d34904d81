"""Order-preserving guillotine partition of a page into panel rectangles.

The page is split recursively into two rectangles (a full-width horizontal cut
or a full-height vertical cut); panels keep their input order under in-order
traversal, and every split ratio is the area share of the panels assigned to
the first side. The search enumerates every order-preserving binary split tree
and keeps the one minimizing the summed aspect deviation

    loss = sum_i |desired_aspect_i - realized_aspect_i|

with realized aspects measured in normalized page coordinates. Ties are broken
toward the earlier split index and horizontal before vertical (a candidate
replaces the incumbent only on strict improvement). Branch-and-bound pruning
(a subtree is abandoned once its partial loss reaches the incumbent) keeps the
exhaustive search fast without changing the winner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import LayoutError
from .panel_model import PanelAttributes

K_MAX = 12

HORIZONTAL = "horizontal"  # cut across: first child on top
VERTICAL = "vertical"  # cut down: first child on the left


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in page fractions, origin at the top-left."""

    x: float
    y: float
    w: float
    h: float

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"degenerate rect {self}")
        if self.x < 0 or self.y < 0:
            raise ValueError(f"negative origin {self}")
        if self.x + self.w > 1 + 1e-9 or self.y + self.h > 1 + 1e-9:
            raise ValueError(f"rect exceeds page bounds {self}")

    @property
    def aspect(self) -> float:
        return self.w / self.h

    @property
    def area(self) -> float:
        return self.w * self.h


@dataclass(frozen=True)
class Leaf:
    panel_index: int
    rect: Rect


@dataclass(frozen=True)
class Split:
    orientation: str  # HORIZONTAL or VERTICAL
    ratio: float  # area share of the first child, in (0, 1)
    first: "LayoutTree"
    second: "LayoutTree"


LayoutTree = Union[Leaf, Split]

FULL_PAGE = Rect(0.0, 0.0, 1.0, 1.0)


def generate_layout(
    panels: Sequence[PanelAttributes], area: Rect = FULL_PAGE, *, k_max: int = K_MAX
) -> tuple[LayoutTree, float]:
    """Find the minimum-loss order-preserving guillotine tree for the panels.

    Panel areas are normalized to sum to 1 first, so each leaf occupies its
    panel's share of the root area exactly. Raises LayoutError for an empty
    panel list or for more than ``k_max`` panels (the search is exhaustive and
    grows exponentially).
    """
    k = len(panels)
    if k == 0:
        raise LayoutError("no panels to lay out")
    if k > k_max:
        raise LayoutError(
            f"{k} panels exceed the search limit k_max={k_max}; "
            "merge sections to reduce the panel count"
        )
    sizes = [p.area for p in panels]
    if any(s <= 0 for s in sizes):
        raise LayoutError("panel areas must be positive")
    total = sum(sizes)
    prefix = [0.0]
    for s in sizes:
        prefix.append(prefix[-1] + s / total)
    aspects = [p.aspect for p in panels]

    def search(lo, hi, x, y, w, h, bound):
        # Returns the minimum-loss (loss, node) strictly below `bound`, else
        # None. The second child's budget gets one ulp of slack because the
        # subtraction may round below the true remainder; the parent re-checks
        # the exact total, so ties still resolve to the earliest candidate.
        if hi - lo == 1:
            loss = abs(aspects[lo] - w / h)
            if loss >= bound:
                return None
            return loss, ("leaf", lo, x, y, w, h)
        span = prefix[hi] - prefix[lo]
        best = bound
        best_node = None
        for i in range(lo + 1, hi):
            t = (prefix[i] - prefix[lo]) / span
            h1 = h * t
            first = search(lo, i, x, y, w, h1, best)
            if first is not None:
                loss1, node1 = first
                rest = math.nextafter(best - loss1, math.inf)
                second = search(i, hi, x, y + h1, w, h - h1, rest)
                if second is not None:
                    loss2, node2 = second
                    total = loss1 + loss2
                    if total < best:
                        best = total
                        best_node = ("split", HORIZONTAL, t, node1, node2)
            w1 = w * t
            first = search(lo, i, x, y, w1, h, best)
            if first is not None:
                loss1, node1 = first
                rest = math.nextafter(best - loss1, math.inf)
                second = search(i, hi, x + w1, y, w - w1, h, rest)
                if second is not None:
                    loss2, node2 = second
                    total = loss1 + loss2
                    if total < best:
                        best = total
                        best_node = ("split", VERTICAL, t, node1, node2)
        if best_node is None:
            return None
        return best, best_node

    # Seed the bound with the two single-orientation stack layouts; the true
    # optimum can never exceed them, and nextafter keeps equal-loss candidates
    # eligible so tie-breaking is unaffected.
    seed = min(
        _stack_loss(aspects, prefix, area, HORIZONTAL),
        _stack_loss(aspects, prefix, area, VERTICAL),
    )
    result = search(0, k, area.x, area.y, area.w, area.h, math.nextafter(seed, math.inf))
    assert result is not None
    loss, node = result
    return _to_tree(node), loss


def _stack_loss(aspects, prefix, area: Rect, orientation: str) -> float:
    """Loss of the layout that stacks every panel along one direction.

    Accumulates terms back to front so the total is bit-identical to the
    right-associated sum the recursive search produces for the same chain
    tree; the seeded bound must never undercut a reachable tree.
    """
    x, y, w, h = area.x, area.y, area.w, area.h
    terms = []
    k = len(aspects)
    for i in range(k):
        share = prefix[i + 1] - prefix[i]
        remaining = prefix[k] - prefix[i]
        t = share / remaining
        if orientation == HORIZONTAL:
            cell_h = h * t if i < k - 1 else h
            terms.append(abs(aspects[i] - w / cell_h))
            y += cell_h
            h -= cell_h
        else:
            cell_w = w * t if i < k - 1 else w
            terms.append(abs(aspects[i] - cell_w / h))
            x += cell_w
            w -= cell_w
    total = 0.0
    for term in reversed(terms):
        total = term + total
    return total


def _to_tree(node) -> LayoutTree:
    if node[0] == "leaf":
        _, index, x, y, w, h = node
        return Leaf(index, Rect(x, y, w, h))
    _, orientation, ratio, first, second = node
    return Split(orientation, ratio, _to_tree(first), _to_tree(second))


def tree_leaves(tree: LayoutTree) -> list[Leaf]:
    """Leaves in in-order (= panel order)."""
    if isinstance(tree, Leaf):
        return [tree]
    return tree_leaves(tree.first) + tree_leaves(tree.second)


def tree_rects(tree: LayoutTree) -> list[Rect]:
    """Leaf rectangles in panel order."""
    return [leaf.rect for leaf in tree_leaves(tree)]


def layout_loss(panels: Sequence[PanelAttributes], tree: LayoutTree) -> float:
    """Summed aspect deviation of the tree's leaves against the panels."""
    leaves = tree_leaves(tree)
    if len(leaves) != len(panels):
        raise LayoutError(
            f"tree has {len(leaves)} leaves but {len(panels)} panels were given"
        )
    return sum(
        abs(p.aspect - leaf.rect.aspect) for p, leaf in zip(panels, leaves)
    )


def dump_layout(tree: LayoutTree, loss: float) -> str:
    """Stable text serialization of a layout tree, for debugging and goldens."""
    lines = ["layout-tree v1", f"loss {loss:.9f}"]

    def walk(node, depth):
        pad = "  " * depth
        if isinstance(node, Leaf):
            r = node.rect
            lines.append(
                f"{pad}leaf {node.panel_index} "
                f"{r.x:.9f} {r.y:.9f} {r.w:.9f} {r.h:.9f}"
            )
        else:
            lines.append(f"{pad}split {node.orientation} {node.ratio:.9f}")
            walk(node.first, depth + 1)
            walk(node.second, depth + 1)

    walk(tree, 0)
    return "\n".join(lines) + "\n"
