"""Label the language-ID fixture with langid.py restricted to en/de/cs/uk/zh/ru.

Usage: python3 langid_oracle.py > ../../crates/core/tests/fixtures/langid_oracle.jsonl
"""
import json

import langid

from langid_sentences import SENTENCES

LANGS = ["en", "de", "cs", "uk", "zh", "ru"]


def main():
    langid.set_languages(LANGS)
    for intended, sentences in SENTENCES.items():
        for text in sentences:
            label, _ = langid.classify(text)
            print(json.dumps({"text": text, "intended": intended, "oracle": label},
                             ensure_ascii=False))


if __name__ == "__main__":
    main()
