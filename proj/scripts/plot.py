#!/usr/bin/env python3
"""Plot sentopic CSV artifacts.

Usage:
  plot.py trainlog LOG.csv [LOG2.csv ...] --metric ais_perplexity -o out.png
  plot.py pr PR.csv [PR2.csv ...] -o out.png
  plot.py bars RESULTS.csv --x k --y value -o out.png

CSV comment lines starting with '#' are ignored.
"""

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_csv(path):
    with open(path) as f:
        rows = [r for r in csv.reader(f) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    return header, body


def cmd_trainlog(args):
    for path in args.files:
        header, body = read_csv(path)
        epoch_i = header.index("epoch")
        metric_i = header.index("metric_name")
        value_i = header.index("value")
        xs, ys = [], []
        for row in body:
            if row[metric_i] == args.metric:
                xs.append(int(row[epoch_i]))
                ys.append(float(row[value_i]))
        plt.plot(xs, ys, marker="o", label=path)
    plt.xlabel("epoch")
    plt.ylabel(args.metric)
    plt.legend()


def cmd_pr(args):
    for path in args.files:
        header, body = read_csv(path)
        recall_i = header.index("recall")
        precision_i = header.index("precision")
        xs = [float(r[recall_i]) for r in body]
        ys = [float(r[precision_i]) for r in body]
        plt.plot(xs, ys, marker="o", label=path)
    plt.xlabel("recall")
    plt.ylabel("precision")
    plt.legend()


def cmd_bars(args):
    header, body = read_csv(args.files[0])
    x_i = header.index(args.x)
    y_i = header.index(args.y)
    xs = [r[x_i] for r in body]
    ys = [float(r[y_i]) for r in body]
    plt.bar(xs, ys)
    plt.xlabel(args.x)
    plt.ylabel(args.y)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    sub = parser.add_subparsers(dest="kind", required=True)
    p = sub.add_parser("trainlog")
    p.add_argument("files", nargs="+")
    p.add_argument("--metric", default="ais_perplexity")
    p.add_argument("-o", "--out", default="plot.png")
    p = sub.add_parser("pr")
    p.add_argument("files", nargs="+")
    p.add_argument("-o", "--out", default="plot.png")
    p = sub.add_parser("bars")
    p.add_argument("files", nargs="+")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("-o", "--out", default="plot.png")
    args = parser.parse_args()

    {"trainlog": cmd_trainlog, "pr": cmd_pr, "bars": cmd_bars}[args.kind](args)
    plt.tight_layout()
    plt.savefig(args.out, dpi=120)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    sys.exit(main())
