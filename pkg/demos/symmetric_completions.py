"""Which affine resolvable designs extend to a symmetric design?

A 2-(v,k,lam) design with r = k + lam is quasi-residual: its parameters are
those of a residual of a symmetric 2-(v+r, r, lam) design.  The completion,
if it exists, lives inside a specific linear code (the span of the bordered
point rows plus the all-ones vector), so counting that code's weight-r words
decides the question.  The affine geometry designs embed into projective
geometry; the bundled exceptional designs e1 and e2 have the same parameters
but only 69 candidate rows against the 85 a completion needs.
"""

from importlib import resources

from embedrank import (
    ag_design,
    are_isomorphic,
    parse_des,
    pg_design,
    quasi_residual_params,
    sym_embedding_search,
    thm_taf_necessary,
)


def bundled(name: str):
    return parse_des(resources.files("embedrank.data").joinpath(name).read_text())


def main() -> None:
    small, _ = ag_design(3, 2, 2)
    print(f"{small.name}: target {quasi_residual_params(8, 4, 3)}")
    result = sym_embedding_search(small)
    hit = result.designs[0]
    print(
        f"  {result.weight_count} weight-7 codewords, "
        f"{len(result.designs)} completion, "
        f"isomorphic to PG_2(3,2): {are_isomorphic(hit, pg_design(3, 2, 2))}"
    )

    ag, _ = ag_design(3, 4, 2)
    designs = [("AG_2(3,4)", ag), ("e1", bundled("e1.des")), ("e2", bundled("e2.des"))]
    print(f"\ntarget {quasi_residual_params(64, 16, 5)}:")
    pg = pg_design(3, 4, 2)
    for name, design in designs:
        cond = thm_taf_necessary(design)
        result = sym_embedding_search(design)
        line = (
            f"  {name}: parallel-union words {cond.found}/{cond.required}, "
            f"weight-21 words {result.weight_count}, "
            f"completions {len(result.designs)}"
        )
        if result.designs and are_isomorphic(result.designs[0], pg):
            line += " (= PG_2(3,4))"
        print(line)

    print(
        "\n85 distinct new rows are needed; e1 and e2 offer only 69, "
        "so neither embeds even though their parameters are quasi-residual."
    )


if __name__ == "__main__":
    main()
