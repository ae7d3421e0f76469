"""Write a JSON certificate for URT(3) and for every k in 4..21.

    python scripts/certify_all.py --out certs --jobs 4
"""

import argparse
import json
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from urt import certify
from urt import constructions as C


def one(k):
    start = time.perf_counter()
    cert = certify.verify_threshold(k)
    return k, cert.to_dict(), time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("certs"))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    urt3 = certify.verify_urt3()
    (args.out / "urt3.json").write_text(urt3.to_json())
    print(f"URT(3)   {urt3.verdict}")

    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        for k, data, secs in pool.map(one, C.K_RANGE):
            (args.out / f"urt_{k}.json").write_text(json.dumps(data, indent=2))
            ok = certify.recheck_certificate(data)
            print(f"URT({k:2d})  {data['verdict']}  N={data['N']}  "
                  f"candidates={len(data['candidates'])}  recheck={'ok' if ok else 'FAILED'}  {secs:.1f}s")


if __name__ == "__main__":
    main()
