#!/usr/bin/env python3
"""Download benchmark datasets into DATA_DIR/<name>/{train,test}.csv.

Each dataset is tried from its canonical repository first. If that host is
unreachable, a mirror packaged on PyPI is used instead; mirror archives are
pinned by sha256. Every output directory gets a SOURCE file recording where
the rows came from and how they were split.

Output: features then label, comma separated, no header. usps is kept in
svmlight form (train.svm / test.svm).
"""

import argparse
import bz2
import hashlib
import io
import os
import random
import subprocess
import sys
import urllib.error
import urllib.request
import zipfile

TIMEOUT = 120
RETRIES = 3

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
LIBSVM = "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/multiclass"

KEEL_WHEEL = (
    "https://files.pythonhosted.org/packages/77/88/c99136c61bb85663bd8cfb328fada55846eb10bd7271058160526e9674bf/"
    "keel_ds-0.2.5-py3-none-any.whl",
    "79faf1bd2f3ac2082d16eb9c8c49b2b1a60a5182e94464c5d32c7c642ea9650e",
)
IMBALANCED_WHEEL = (
    "https://files.pythonhosted.org/packages/9e/44/5bc6bf4d05a19e711fcdbceb0f4fcc48b46b85d3f140285bacafee2a40d8/"
    "imbalanced_databases-0.1.1-py3-none-any.whl",
    "9fc58c203f1adfebe54bef86d4b3dfe1f6f9f027a9ef35d47031981997391add",
)

SATIMAGE_SPLIT_SEED = 0
SATIMAGE_TRAIN_FRACTION = 0.8

_cache = {}


def log(msg):
    print(msg, file=sys.stderr, flush=True)


def download(url, sha256=None):
    if url in _cache:
        return _cache[url]
    log(f"  GET {url}")
    for attempt in range(RETRIES):
        try:
            with urllib.request.urlopen(url, timeout=TIMEOUT) as resp:
                data = resp.read()
            break
        except urllib.error.URLError as e:
            # name resolution failures will not fix themselves
            if attempt + 1 == RETRIES or isinstance(getattr(e, "reason", None), OSError) and "Name" in str(e):
                raise
        except TimeoutError:
            if attempt + 1 == RETRIES:
                raise
    if sha256 is not None:
        got = hashlib.sha256(data).hexdigest()
        if got != sha256:
            raise RuntimeError(f"checksum mismatch for {url}: expected {sha256}, got {got}")
    _cache[url] = data
    return data


def wheel_member(wheel, member):
    url, sha = wheel
    with zipfile.ZipFile(io.BytesIO(download(url, sha))) as zf:
        return zf.read(member).decode("ascii")


def rows_from_text(text, sep=None):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("@"):
            continue
        cells = [c.strip() for c in (line.split(sep) if sep else line.split())]
        rows.append(cells)
    return rows


def write_csv(path, rows):
    with open(path, "w", newline="\n") as f:
        for r in rows:
            f.write(",".join(r) + "\n")


def write_dataset(out_dir, name, train, test, source):
    d = os.path.join(out_dir, name)
    os.makedirs(d, exist_ok=True)
    write_csv(os.path.join(d, "train.csv"), train)
    write_csv(os.path.join(d, "test.csv"), test)
    with open(os.path.join(d, "SOURCE"), "w") as f:
        f.write(source.strip() + "\n")
        f.write(f"train rows: {len(train)}\ntest rows: {len(test)}\n")
    log(f"  {name}: {len(train)} train / {len(test)} test rows")


def first_working(name, attempts):
    errors = []
    for label, fn in attempts:
        try:
            return fn()
        except Exception as e:  # network or format failure: try the next source
            errors.append(f"{label}: {e}")
            log(f"  {label} failed: {e}")
    raise RuntimeError(f"{name}: no source worked\n  " + "\n  ".join(errors))


# ---------------------------------------------------------------------------


def optdigits():
    def canonical():
        tra = rows_from_text(download(f"{UCI}/optdigits/optdigits.tra").decode(), ",")
        tes = rows_from_text(download(f"{UCI}/optdigits/optdigits.tes").decode(), ",")
        return tra, tes, f"{UCI}/optdigits/optdigits.tra and optdigits.tes (original split)"

    def mirror():
        rows = rows_from_text(wheel_member(KEEL_WHEEL, "keel_ds/data/balanced/raw/optdigits.dat"), ",")
        # the mirror concatenates the original training file and test file
        if len(rows) != 5620:
            raise RuntimeError(f"expected 5620 rows, found {len(rows)}")
        return rows[:3823], rows[3823:], (
            f"{KEEL_WHEEL[0]} (sha256 {KEEL_WHEEL[1]}), keel_ds/data/balanced/raw/optdigits.dat;\n"
            "rows 1-3823 are optdigits.tra, rows 3824-5620 are optdigits.tes"
        )

    return first_working("optdigits", [("UCI", canonical), ("PyPI mirror", mirror)])


def letter():
    def relabel(rows):
        # UCI puts the letter first; move it last
        return [r[1:] + r[:1] for r in rows]

    def canonical():
        rows = relabel(rows_from_text(download(f"{UCI}/letter-recognition/letter-recognition.data").decode(), ","))
        return rows[:16000], rows[16000:], (
            f"{UCI}/letter-recognition/letter-recognition.data; first 16000 rows train, last 4000 test"
        )

    def mirror():
        rows = rows_from_text(wheel_member(KEEL_WHEEL, "keel_ds/data/balanced/raw/letter.dat"), ",")
        if len(rows) != 20000:
            raise RuntimeError(f"expected 20000 rows, found {len(rows)}")
        return rows[:16000], rows[16000:], (
            f"{KEEL_WHEEL[0]} (sha256 {KEEL_WHEEL[1]}), keel_ds/data/balanced/raw/letter.dat;\n"
            "first 16000 rows train, last 4000 test. The mirror's row order differs from the\n"
            "UCI file, so this split is not the same 16000/4000 partition as the canonical one."
        )

    return first_working("letter", [("UCI", canonical), ("PyPI mirror", mirror)])


def satimage():
    def split(rows, origin):
        rng = random.Random(SATIMAGE_SPLIT_SEED)
        order = list(range(len(rows)))
        rng.shuffle(order)
        n_train = int(round(SATIMAGE_TRAIN_FRACTION * len(rows)))
        train = [rows[i] for i in order[:n_train]]
        test = [rows[i] for i in order[n_train:]]
        return train, test, (
            f"{origin};\nsat.trn and sat.tst concatenated ({len(rows)} rows), shuffled with "
            f"random.Random({SATIMAGE_SPLIT_SEED}) and split {SATIMAGE_TRAIN_FRACTION:.0%} train"
        )

    def canonical():
        base = f"{UCI}/statlog/satimage"
        rows = rows_from_text(download(f"{base}/sat.trn").decode()) + rows_from_text(download(f"{base}/sat.tst").decode())
        return split(rows, f"{base}/sat.trn and sat.tst")

    def mirror():
        prefix = "imbalanced_databases/data/satimage/"
        rows = rows_from_text(wheel_member(IMBALANCED_WHEEL, prefix + "sat.trn.txt")) + rows_from_text(
            wheel_member(IMBALANCED_WHEEL, prefix + "sat.tst.txt")
        )
        return split(rows, f"{IMBALANCED_WHEEL[0]} (sha256 {IMBALANCED_WHEEL[1]}), {prefix}sat.trn.txt and sat.tst.txt")

    return first_working("satimage", [("UCI", canonical), ("PyPI mirror", mirror)])


def isolet():
    def uncompress(data):
        # .Z (LZW) files; gzip understands the format
        return subprocess.run(["gzip", "-dc"], input=data, capture_output=True, check=True).stdout.decode()

    def canonical():
        train = rows_from_text(uncompress(download(f"{UCI}/isolet/isolet1+2+3+4.data.Z")), ",")
        test = rows_from_text(uncompress(download(f"{UCI}/isolet/isolet5.data.Z")), ",")
        return train, test, f"{UCI}/isolet/isolet1+2+3+4.data.Z and isolet5.data.Z (original split)"

    return first_working("isolet", [("UCI", canonical)])


def usps(out_dir):
    def canonical():
        train = bz2.decompress(download(f"{LIBSVM}/usps.bz2"))
        test = bz2.decompress(download(f"{LIBSVM}/usps.t.bz2"))
        return train, test

    train, test = first_working("usps", [("LIBSVM", canonical)])
    d = os.path.join(out_dir, "usps")
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, "train.svm"), "wb") as f:
        f.write(train)
    with open(os.path.join(d, "test.svm"), "wb") as f:
        f.write(test)
    with open(os.path.join(d, "SOURCE"), "w") as f:
        f.write(f"{LIBSVM}/usps.bz2 and usps.t.bz2 (original split)\n")
    log("  usps: written")


FETCHERS = {
    "optdigits": optdigits,
    "satimage": satimage,
    "letter": letter,
    "isolet": isolet,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data-dir", default=os.environ.get("DATA_DIR") or "data")
    ap.add_argument("datasets", nargs="*", default=["optdigits", "satimage", "letter"])
    args = ap.parse_args()

    failed = []
    for name in args.datasets:
        log(f"{name}:")
        try:
            if name == "usps":
                usps(args.data_dir)
            elif name in FETCHERS:
                train, test, source = FETCHERS[name]()
                write_dataset(args.data_dir, name, train, test, source)
            else:
                raise RuntimeError(f"unknown dataset {name}")
        except Exception as e:
            log(f"error: {e}")
            failed.append(name)
    if failed:
        log("failed: " + ", ".join(failed))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
