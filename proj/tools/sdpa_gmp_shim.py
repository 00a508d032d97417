#!/usr/bin/env python3
"""SDPA-style command line around the multiprecision SDPA Python binding.

Usage: sdpa_gmp_shim.py -ds problem.dat-s -o result.out [-p param.sdpa]

The result file follows the SDPA output layout (objValPrimal, objValDual,
phase.value, xVec, xMat, yMat) so that it can be read by any parser written
for SDPA / SDPA-GMP. The binding exchanges data as IEEE doubles even though
the interior-point iterations run in GMP arithmetic; values are printed with
17 significant digits so nothing is lost on the way out.
"""

import argparse
import sys

import numpy as np

PARAM_KEYS = [
    ("maxIteration", int),
    ("epsilonStar", float),
    ("lambdaStar", float),
    ("omegaStar", float),
    ("lowerBound", float),
    ("upperBound", float),
    ("betaStar", float),
    ("betaBar", float),
    ("gammaStar", float),
    ("epsilonDash", float),
    ("mpfPrecision", int),
]


def read_params(path):
    option = {}
    with open(path) as fp:
        lines = [ln for ln in fp if ln.strip()]
    for (key, conv), line in zip(PARAM_KEYS, lines):
        option[key] = conv(float(line.split()[0]))
    return option


def read_block_struct(path):
    with open(path) as fp:
        line = fp.readline()
        while line and line[0] in '*"':
            line = fp.readline()
        nblock = int(fp.readline().replace(",", " ").split()[0])
        tokens = fp.readline().replace(",", " ").replace("{", " ").replace("}", " ").split()
    return [int(tok) for tok in tokens[:nblock]]


def split_blocks(vec, struct):
    """Cut a SeDuMi-ordered vector (LP part first, then SDP blocks) into SDPA blocks."""
    vec = np.asarray(vec).ravel()
    lp_total = sum(-s for s in struct if s < 0)
    lp_off, sdp_off = 0, lp_total
    blocks = []
    for s in struct:
        if s < 0:
            blocks.append(vec[lp_off:lp_off - s].copy())
            lp_off -= s
        else:
            mat = vec[sdp_off:sdp_off + s * s].reshape((s, s))
            blocks.append(0.5 * (mat + mat.T))
            sdp_off += s * s
    return blocks


def fmt(x):
    return "%+.17e" % x


def write_blocks(fp, name, blocks):
    fp.write("%s = \n{\n" % name)
    for blk in blocks:
        if blk.ndim == 1:
            fp.write("{" + ",".join(fmt(v) for v in blk) + " }\n")
        else:
            rows = ["{" + ",".join(fmt(v) for v in row) + " }" for row in blk]
            fp.write("{ " + ", ".join(rows) + " }\n")
    fp.write("}\n")


def main(argv):
    ap = argparse.ArgumentParser()
    ap.add_argument("-ds", dest="problem", required=True)
    ap.add_argument("-o", dest="output", required=True)
    ap.add_argument("-p", dest="params")
    args = ap.parse_args(argv)

    import sdpap
    from sdpap.sdpacall import sdpacall

    option = read_params(args.params) if args.params else {}
    option.setdefault("mpfPrecision", 200)
    option["print"] = "display"
    option["numThreads"] = 1

    struct = read_block_struct(args.problem)
    A, b, c, K, J = sdpap.importsdpa(args.problem)
    x, y, sdpapinfo, timeinfo, sdpainfo = sdpap.solve(A, b, c, K, J, option)

    backend = sdpacall.get_backend_info()
    xvec = np.asarray(y.todense()).ravel() if hasattr(y, "todense") else np.asarray(y).ravel()
    xdense = np.asarray(x.todense()).ravel() if hasattr(x, "todense") else np.asarray(x).ravel()
    slack = (c - A.T @ y)
    sdense = np.asarray(slack.todense()).ravel() if hasattr(slack, "todense") else np.asarray(slack).ravel()

    with open(args.output, "w") as fp:
        fp.write("SDPA (sdpap %s backend, precision %d bits)\n"
                 % ("gmp" if backend.get("gmp") else "double", option["mpfPrecision"]))
        fp.write("phase.value  = %s\n" % sdpainfo["phasevalue"])
        fp.write("   Iteration = %d\n" % sdpainfo["iteration"])
        fp.write("objValPrimal = %s\n" % fmt(-sdpainfo["dualObj"]))
        fp.write("objValDual   = %s\n" % fmt(-sdpainfo["primalObj"]))
        fp.write("p.feas.error = %s\n" % fmt(sdpainfo["dualError"]))
        fp.write("d.feas.error = %s\n" % fmt(sdpainfo["primalError"]))
        fp.write("xVec = \n{" + ",".join(fmt(v) for v in xvec) + " }\n")
        write_blocks(fp, "xMat", split_blocks(sdense, struct))
        write_blocks(fp, "yMat", split_blocks(xdense, struct))
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
