"""
Write verified lower-bound witnesses 3K_{n+1} for a parameter range to a
graph6 corpus, one line per n.
Run with: python3 scripts/build_witness_corpus.py --max-n 8 --m 5 --out witnesses.g6
"""

import argparse
import sys
from pathlib import Path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.repositories.graph_corpus_repository import GraphCorpusRepository
from src.services.arrowing_service import verify_lower_bound_witness
from src.services.construction_service import ConstructionService


def main():
    parser = argparse.ArgumentParser(description="Build a corpus of lower-bound witnesses")
    parser.add_argument('--max-n', type=int, default=8)
    parser.add_argument('--m', type=int, default=5)
    parser.add_argument('--out', default='witnesses.g6')
    args = parser.parse_args()

    corpus = GraphCorpusRepository(args.out)
    corpus.write_comment(f"3K_(n+1) for n = 1..{args.max_n}, verified against W_{args.m}")

    print(f"\nBuilding witnesses for n = 1..{args.max_n}, m = {args.m}")
    print("=" * 60)

    failed = 0
    for n in range(1, args.max_n + 1):
        verdict = verify_lower_bound_witness(n, args.m)
        if not verdict.conclusion_holds:
            print(f"  ✗ n={n}: verification failed")
            failed += 1
            continue
        corpus.append([ConstructionService.lower_bound_witness(n)])
        print(f"  ✓ n={n}: order {3 * n + 3}, certifies R >= {3 * n + 4}")

    print("\n" + "=" * 60)
    print(f"Wrote {args.max_n - failed} witnesses to {args.out}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
