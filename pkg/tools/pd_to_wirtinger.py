"""Regenerate bundled Wirtinger presentations from planar diagram codes.

Development helper only; needs ``spherogram`` for the PD codes, which the
package itself does not depend on.  Run from the repository root:

    python tools/pd_to_wirtinger.py 3_1 8_18 8_21 9_12 9_24 9_39 9_40

4_1 and 9_37 are not generated here; their files are transcribed by hand.
"""
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "twistedalex" / "data"


def wirtinger_from_pd(pd):
    """Return (generator count, relators) with relators as signed 1-based ints.

    Each crossing (a, b, c, d) lists its strands counterclockwise, starting
    with the incoming under-strand a; c is the outgoing under-strand.
    """
    nedges = 2 * len(pd)
    parent = list(range(nedges))

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for a, b, c, d in pd:
        parent[find(b)] = find(d)

    # number arcs in the order they are met walking along the knot from edge 0
    arc_index = {}
    for e in range(nedges):
        root = find(e)
        if root not in arc_index:
            arc_index[root] = len(arc_index) + 1
    arc = [arc_index[find(e)] for e in range(nedges)]

    relators = []
    for a, b, c, d in pd:
        if (b - d) % nedges == 1:
            sign = 1  # over-strand runs d -> b
        elif (d - b) % nedges == 1:
            sign = -1
        else:
            raise ValueError(f"cannot orient over-strand at crossing {(a, b, c, d)}")
        k, x_in, x_out = arc[b], arc[a], arc[c]
        relators.append([sign * k, x_in, -sign * k, -x_out])
    return len(arc_index), relators


def render(name, ngens, relators):
    names = [f"x{i}" for i in range(1, ngens + 1)]

    def letter(g):
        return names[abs(g) - 1] + ("" if g > 0 else "^-1")

    words = [" ".join(letter(g) for g in r) for r in relators]
    lines = [
        f"name: {name}",
        "alpha: " + " ".join("1" for _ in names),
        f"< {', '.join(names)} |",
    ]
    lines += ["    " + w + ("," if i < len(words) - 1 else "") for i, w in enumerate(words)]
    lines.append(">")
    return "\n".join(lines) + "\n"


def main(names):
    import spherogram

    for name in names:
        pd = spherogram.Link(name).PD_code()
        ngens, relators = wirtinger_from_pd(pd)
        # one Wirtinger relator is a consequence of the others
        text = f"# Wirtinger presentation generated from PD code {pd}\n"
        text += render(name, ngens, relators[:-1])
        (DATA / f"{name}.pres").write_text(text)
        print(f"wrote {name}.pres ({ngens} generators)")


if __name__ == "__main__":
    main(sys.argv[1:])
