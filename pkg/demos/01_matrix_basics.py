"""Walk through matrix ingestion: parsing, missing values, discretization,
normalization.

Run:  python3 demos/01_matrix_basics.py
"""

from genecluster import (
    NormalizationParams,
    discretize,
    drop_incomplete_genes,
    matrix_to_text,
    min_max_normalize,
    parse_matrix,
)

RAW = """\
id\tt1\tt2\tt3\tt4
cyclin\t0.5\t0.3\t0.3\t0.8
kinase\t10.0\t20.0\t15.0\t40.0
orphan\t1.0\tNA\t2.0\t3.0
ligase\t7.0\t6.5\t9.0\t2.0
"""


def main():
    print("== raw text ==")
    print(RAW)

    m = parse_matrix(RAW, orientation="genes-as-rows")
    print(f"parsed {m.n_genes} genes x {m.n_conditions} conditions")
    print(f"complete (no missing entries): {m.is_complete}")

    # genes with any missing measurement cannot be compared fairly, drop them
    complete = drop_incomplete_genes(m)
    print(f"after dropping incomplete genes: {complete.gene_ids}")

    # regulation codes per gene: sign of the first value, then sign of each
    # condition-to-condition change: 1 up, -1 down, 0 steady
    codes = discretize(complete)
    print("\n== discretized ==")
    print(matrix_to_text(codes), end="")
    row = dict(zip(codes.gene_ids, codes.values.tolist()))
    print(f"\ncyclin profile [0.5, 0.3, 0.3, 0.8] became {row['cyclin']}")
    print("meaning: starts positive, falls, holds steady, rises")

    # min-max rescaling runs per condition column, so genes measured on
    # wildly different magnitudes (kinase vs cyclin) become comparable;
    # the column extremes land exactly on the requested bounds
    norm = min_max_normalize(complete, NormalizationParams(0.0, 1.0))
    print("\n== normalized ==")
    print(matrix_to_text(norm), end="")
    print("\neach column now spans exactly [0, 1]:")
    for j, cid in enumerate(norm.condition_ids):
        col = norm.values[:, j]
        print(f"  {cid}: min {col.min()}, max {col.max()}")


if __name__ == "__main__":
    main()
