"""Emit every machine-checkable certificate as JSON, replaying each first.

Writes one file per certificate into the output directory: the
amalgamation failure, the antichain-swap and lexicographic-collapse
non-homogeneity witnesses (both widths), and a two-homogeneity
extension demo on an ascending four-chain.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from orderdim.geometry import PointCloud
from orderdim.homogeneity import (
    ap_failure_certificate,
    nonhom_witness,
    qn_lex_nonhom_witness,
    two_homogeneity_certificate,
)


def two_hom_demo(n: int):
    pts = [tuple(4 * k + i for i in range(n)) for k in range(4)]
    cloud = PointCloud(n, pts)
    return two_homogeneity_certificate(
        cloud, (pts[0], pts[1]), (pts[2], pts[3]), steps=4
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="certificates", help="output directory")
    args = ap.parse_args()

    jobs = [("ap_failure_n2", ap_failure_certificate(2))]
    for n in (2, 3):
        jobs.append((f"nonhom_n{n}", nonhom_witness(n)))
        jobs.append((f"qn_lex_nonhom_n{n}", qn_lex_nonhom_witness(n)))
        jobs.append((f"two_homogeneity_n{n}", two_hom_demo(n)))

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, cert in jobs:
        assert cert.replay(), name
        path = outdir / f"{name}.json"
        path.write_text(json.dumps(cert.to_json(), sort_keys=True, indent=2) + "\n")
        print(f"{path}  kind={cert.kind.value}  replay=ok")


if __name__ == "__main__":
    main()
