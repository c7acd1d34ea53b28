"""Export character n-gram profiles for the built-in language detector.

Source: the Wikipedia-derived profiles bundled with the `langdetect` package
(Apache-2.0). Each output file lists `count<TAB>ngram` for orders 1-3, with
the per-order totals in a header line.

Usage: python3 export_langprofiles.py ../crates/core/data/langprofiles
"""
import json
import os
import sys

import langdetect

LANGS = ["en", "de", "cs", "uk", "ru"]


def main(out_dir):
    src = os.path.join(os.path.dirname(langdetect.__file__), "profiles")
    os.makedirs(out_dir, exist_ok=True)
    for lang in LANGS:
        with open(os.path.join(src, lang), encoding="utf-8") as f:
            profile = json.load(f)
        with open(os.path.join(out_dir, f"{lang}.tsv"), "w", encoding="utf-8") as out:
            out.write("# totals\t" + " ".join(str(n) for n in profile["n_words"]) + "\n")
            for gram, count in sorted(profile["freq"].items(), key=lambda kv: (-kv[1], kv[0])):
                if "\t" in gram or "\n" in gram:
                    continue
                out.write(f"{count}\t{gram}\n")


if __name__ == "__main__":
    main(sys.argv[1])
