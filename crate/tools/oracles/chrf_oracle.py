"""Freeze reference chrF values (sacrebleu, nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no).

Usage: python3 chrf_oracle.py > ../../crates/core/tests/fixtures/chrf_oracle.json
sacrebleu imports lxml for its dataset module only; a stub package on
PYTHONPATH is enough when lxml is unavailable.
"""
import json
import random

import sacrebleu
from sacrebleu.metrics import CHRF

P3 = "Translate this from {src_lang} to {tgt_lang}:\\n{src_lang}: {src_text}\\n{tgt_lang}:"
GERMAN = ("Ich finde es sehr lebensbejahend; aus so einfachen Zutaten etwas so "
          "Reichhaltiges und Komplexes zu machen. Wie bei der Geburt eines Kindes.")

PAPER_PAIRS = [
    ("Trranslate ti from", "Translate this from"),
    ("Trranslate ti from {src_lang} too {tgt_lang:}: \\n {src_lang}: {src_text} \\n {tgt_lang}:", P3),
    ("Tranzlate dhiss from {src_lang} to {tgt_lang}: \\n {src_lang}: {src_text} \\n {tgt_lang}:", P3),
    ("Make this text in {tgt_lang} from {src_lang}: \\n {src_lang}: {src_text} \\n {tgt_lang}:", P3),
    ("You translate this text to {tgt_lang} fromm {src_lang}:  \\n {src_lang}: {src_text}  \\n {tgt_lang}:", P3),
    ("Tranzlate thees from {src_lang} to {tgt_lang}:  \\n {src_lang}: {src_text}  \\n {tgt_lang}:", P3),
    ("{tgt_lang} version of this pls:  \\n {src_lang}: {src_text}  \\n {tgt_lang}:", P3),
    ("change lang {src_lang} -> {tgt_lang}:  \\n {src_lang}: {src_text}  \\n {tgt_lang}:", P3),
    (GERMAN.replace(" Reichhaltiges", ""), GERMAN),
    ("Hier ist die Übersetzung von Englisch ins Deutsche:  Offensichtlich gibt es nur zwei Ebenen, "
     "die im Original-Super-Mario-Maker noch nicht abgeschlossen wurden.",
     "Offensichtlich gibt es nur zwei Level, die im ursprünglichen Super Mario Maker noch nicht geschafft wurden."),
]

ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZäöüßěščřžýáíéůйцукенгшщзхїфівапролджєячсмитьбю你好世界中文翻译    .,;:!?-'\"\n\t"


def random_text(rng, lo, hi):
    return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(lo, hi)))


def perturb(rng, text):
    chars = list(text)
    out = []
    for c in chars:
        r = rng.random()
        if r < 0.08:
            continue
        if r < 0.16:
            out.append(rng.choice(ALPHABET))
        elif r < 0.22:
            out.append(c)
            out.append(c)
        else:
            out.append(c)
    return "".join(out)


def main():
    rng = random.Random(20240501)
    chrf = CHRF()
    pairs = []
    for i in range(50):
        ref = random_text(rng, 1, 80)
        if not "".join(ref.split()):
            ref += "x"
        mode = i % 3
        if mode == 0:
            hyp = random_text(rng, 0, 80)
        else:
            hyp = perturb(rng, ref)
        pairs.append(("random", hyp, ref))
    for hyp, ref in PAPER_PAIRS:
        pairs.append(("paper", hyp, ref))
    cases = [
        {"kind": kind, "hypothesis": hyp, "reference": ref,
         "score": chrf.sentence_score(hyp, [ref]).score}
        for kind, hyp, ref in pairs
    ]
    out = {
        "signature": str(chrf.get_signature()),
        "sacrebleu_version": sacrebleu.__version__,
        "cases": cases,
    }
    print(json.dumps(out, ensure_ascii=False, indent=1))


if __name__ == "__main__":
    main()
