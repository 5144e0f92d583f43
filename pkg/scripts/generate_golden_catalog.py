#!/usr/bin/env python3
"""
Regenerate the golden n = 4 catalog fixture.
Writes one record per quotient curve with the fields the golden test compares.
"""

import json
import sys
import argparse
from pathlib import Path
from typing import Any, Dict, List

from humbert import catalog, moduli_action

GOLDEN_KEYS = ("family", "selection", "genus", "shape", "factors", "curve_label", "subgroup_label", "erratum")


class GoldenCatalogGenerator:
    def __init__(self, lambdas: str):
        self.params = moduli_action.parse_tuple(lambdas, 4)
        self.records: List[catalog.CatalogRecord] = []

    @staticmethod
    def golden_record(record: catalog.CatalogRecord) -> Dict[str, Any]:
        """Keep only the fields that are stable across releases."""
        full = record.to_json()
        return {key: full[key] for key in GOLDEN_KEYS}

    def build(self) -> List[Dict[str, Any]]:
        self.records = catalog.build_catalog(self.params.lambdas)
        return [self.golden_record(r) for r in self.records]

    def report_errata(self) -> None:
        """Print the records whose printed form carries a known erratum."""
        errata = [r for r in self.records if r.erratum]
        if not errata:
            return

        print(f"\n[!] {len(errata)} printed forms differ from the cover-consistent equations:")
        for r in errata:
            print(f"  - {r.curve_label}: printed {[str(c) for c in r.printed]}")

    def mismatches(self) -> List[str]:
        return [r.curve_label for r in self.records if not r.ok]


def save_json_file(data: Any, path: Path) -> None:
    """Save data to JSON file with directory creation."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write("\n")


def main():
    DEFAULT_LAMBDAS = "2,3"
    DEFAULT_OUTPUT_PATH = "data/golden/catalog_2_3.json"

    parser = argparse.ArgumentParser(
        description="Regenerate the golden n = 4 catalog fixture",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    parser.add_argument(
        "--lambdas",
        default=DEFAULT_LAMBDAS,
        help="Comma-separated (lambda_1, lambda_2)"
    )
    parser.add_argument(
        "--output-path",
        type=Path,
        default=DEFAULT_OUTPUT_PATH,
        help="Path for the golden JSON file"
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Show detailed processing information"
    )

    args = parser.parse_args()

    try:
        print(f"[*] Building catalog at lambdas = {args.lambdas}")
        generator = GoldenCatalogGenerator(args.lambdas)
        records = generator.build()

        failing = generator.mismatches()
        if failing:
            raise ValueError(f"catalog records disagree with their printed forms: {', '.join(failing)}")

        print(f"[*] Saving golden records to: {args.output_path}")
        save_json_file(records, args.output_path)

        generator.report_errata()
        print(f"\n[✓] Wrote {len(records)} records to {args.output_path}")

    except Exception as e:
        print(f"\n[✗] Error: {e}", file=sys.stderr)
        if args.verbose:
            print("Stack trace:", file=sys.stderr)
            raise
        sys.exit(1)


if __name__ == "__main__":
    main()
