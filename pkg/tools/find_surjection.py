"""Search for a meridian-preserving map from a knot group onto G(4_1).

Development helper used to produce the bundled ``*_to_4_1.hom`` files.
Searched source generators go to short conjugates g x_k g^-1 of target
meridians (the first one to x1, which loses nothing up to an inner
automorphism); the others follow from the Wirtinger relators.  Candidates
are screened with a few SL(2, F_7) representations, then checked against
every SL(2, F_p) representation of the target for p = 5, 7, 11.

    python tools/find_surjection.py 8_18
"""
import itertools
import sys

from twistedalex.obstruction import HomCandidate, sl2_battery, verify_homomorphism
from twistedalex.presentations import Word, free_reduce, load_presentation
from twistedalex.rep_search import SearchOptions, _Check, _Choose, _Derive, enumerate_sl2_images, search_plan
from twistedalex.sl2 import sl2_group


def conjugates(ngens, maxlen):
    letters = [g for i in range(1, ngens + 1) for g in (i, -i)]
    seen = []
    for n in range(maxlen + 1):
        for g in itertools.product(letters, repeat=n):
            if not Word(g).is_reduced():
                continue
            for k in range(1, ngens + 1):
                w = free_reduce(list(g) + [k] + [-x for x in reversed(g)])
                if w not in seen:
                    seen.append(w)
    return seen


def inv(w):
    return Word(-g for g in reversed(w))


def main(name, maxlen=2):
    source = load_presentation(name)
    target = load_presentation("4_1")
    steps = search_plan(source)
    group = sl2_group(7)
    screen = [v for v in enumerate_sl2_images(target, SearchOptions(7))
              if len(set(v)) > 1][::97][:12]
    cands = conjugates(target.ngens, maxlen)
    chooses = [s for s in steps if isinstance(s, _Choose)]
    print(f"{len(cands)} candidate images, {len(chooses)} searched generators")

    def value(rep, w):
        return group.word(rep, w)

    for combo in itertools.product(cands, repeat=len(chooses) - 1):
        images = {}
        free = iter((Word((1,)),) + combo)
        ok = True
        for s in steps:
            if isinstance(s, _Choose):
                images[s.gen] = next(free)
            elif isinstance(s, _Derive):
                def img(letters):
                    out = []
                    for g in letters:
                        out.extend(images[g] if g > 0 else inv(images[-g]))
                    return free_reduce(out)
                x = free_reduce(list(inv(img(s.before))) + list(inv(img(s.after))))
                images[s.gen] = x if s.exponent > 0 else inv(x)
            else:
                letters = []
                for g in s.relator:
                    letters.extend(images[g] if g > 0 else inv(images[-g]))
                w = free_reduce(letters)
                if any(value(rep, w) != group.identity for rep in screen):
                    ok = False
                    break
        if not ok:
            continue
        hom = HomCandidate(source, target, tuple(images[i] for i in range(1, source.ngens + 1)))
        if any(sum(target.abelianization().degree(w) for w in [im]) != 1 for im in hom.images):
            continue
        if not all(verify_homomorphism(hom, sl2_battery(target, p), stop_at_first=True) for p in (5, 7, 11)):
            continue
        res = verify_homomorphism(hom, [])
        if not res.covers_all_generators:
            continue
        print(f"# candidate surjection G({name}) -> G(4_1), found by tools/find_surjection.py")
        print(hom.format(), end="")
        return
    print("no candidate found")


if __name__ == "__main__":
    main(sys.argv[1], int(sys.argv[2]) if len(sys.argv) > 2 else 2)
