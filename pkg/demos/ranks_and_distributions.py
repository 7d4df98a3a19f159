"""Ranks and weight distributions of the geometric 2-(64,16,5) design.

Builds the plane designs of AG(3,4) and PG(3,4), compares their 2-ranks with
the residual rank (the embeddability test is exactly "full rank = residual
rank + 1"), and prints the weight distribution of the [80,15] code spanned
by the rows of the substructure a good block cuts out.  That distribution is
what separates the geometric design from the exceptional ones: rerun this
with one of the designs produced by demos/search_completions.py and weights
30, 38, 44 and 46 change while the rank stays 16.
"""

from embedrank import (
    ag_design,
    code_from_bitrows,
    embeddability,
    good_block,
    mat_rank,
    pg_design,
    verify_tdesign,
    weight_distribution,
)


def main() -> None:
    ag, resolution = ag_design(3, 4, 2)
    pg = pg_design(3, 4, 2)
    for design in (ag, pg):
        params = verify_tdesign(design, 2)
        rank = mat_rank(design.incidence_matrix(2))
        print(
            f"{design.name}: 2-({params.v},{params.k},{params.lam}), "
            f"b = {params.b}, r = {params.r}, 2-rank {rank}"
        )
    print(f"{ag.name} resolution: {resolution.num_classes} classes of {resolution.class_size}")

    rep = embeddability(ag, 0)
    print(
        f"residual of {ag.name} at block 0: rank {rep.rank_residual}, "
        f"embeddable: {rep.embeddable}"
    )
    rep = embeddability(pg, 0)
    print(
        f"residual of {pg.name} at block 0: rank {rep.rank_residual}, "
        f"embeddable: {rep.embeddable} (the residual is {ag.name})"
    )

    gb = good_block(ag, 0)
    sub = gb.substructure
    print(
        f"\nblock 0 is good: cut design 2-(16,4,1), "
        f"substructure {sub.v} x {sub.b}"
    )
    code = code_from_bitrows(sub.point_masks(), sub.b)
    print(f"row code [{code.length},{code.dim}], weight distribution:")
    print(weight_distribution(code).as_csv(), end="")


if __name__ == "__main__":
    main()
