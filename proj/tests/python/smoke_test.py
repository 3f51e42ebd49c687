#!/usr/bin/env python3
"""Python binding smoke tests."""
import sys

import wordtensor as wt


def main():
    g = wt.Group("D8")
    assert g.order == 16
    assert not g.abelian
    assert g.mult(0, 1) == 1
    assert g.eval_word("ab", 2, 3) == g.mult(2, 3)

    canon, n_a, n_b = wt.word_letters("aba^-1ba^2b^3ab^-1")
    assert (n_a, n_b) == (5, 6)

    bscs = g.bscs()
    assert [b["D"] for b in bscs] == [1, 1, 1, 1, 4, 4, 4]
    fusion = g.fusion_table()
    assert fusion[4][4] == [0, 1, 5]

    support = wt.exact_support(g, "ab")
    assert all(t[0] == t[1] == t[2] for t in support)

    br = wt.box_rank(g, "a^2b")
    assert br["rank"] == 52 and br["optimal"]

    q8 = wt.Group("Q8")
    w = wt.construct_full(q8)
    assert w.width == 12
    loss, acc = wt.hd_loss(q8, w)
    assert loss < 1e-10 and acc == 1.0

    z4 = wt.Group("Z4")
    result, terminal = wt.train_hd(z4, "ab", width=8, lr=0.2, epochs=3000,
                                   seed=1)
    assert result["final_train_loss"] < 0.2
    hm = wt.heatmap(z4, terminal)
    assert hm["a"].shape == (8, 4)

    print("python smoke: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
