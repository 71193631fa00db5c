#!/usr/bin/env python3
"""Generate the synthetic abstract-style token corpus used by the tests.

Each document mimics a POS-filtered, stemmed research abstract: a handful of
high-frequency topic stems woven through filler stems, with a gold keyword
set that contains most topic stems plus a few stems that never occur in the
filtered text (so perfect recall is impossible, as with human annotations).

The output is committed under tests/fixtures/corpus; rerunning with the same
seed reproduces it byte for byte.
"""

import argparse
import random
from pathlib import Path

SYLLABLES = [
    "ac", "al", "an", "ar", "at", "bi", "bo", "ca", "cen", "co", "cu", "da",
    "de", "di", "do", "du", "ec", "el", "en", "er", "es", "fa", "fi", "fo",
    "ga", "ge", "gi", "go", "ha", "he", "hi", "ho", "il", "im", "in", "ir",
    "ja", "ka", "ki", "ko", "la", "le", "li", "lo", "lu", "ma", "me", "mi",
    "mo", "mu", "na", "ne", "ni", "no", "nu", "ol", "om", "on", "op", "or",
    "pa", "pe", "pi", "po", "pu", "ra", "re", "ri", "ro", "ru", "sa", "se",
    "si", "so", "su", "ta", "te", "ti", "to", "tu", "ul", "um", "un", "ur",
    "va", "ve", "vi", "vo", "wa", "we", "wi", "ya", "yo", "za", "ze", "zo",
]


def make_stem(rng: random.Random, used: set) -> str:
    while True:
        stem = "".join(rng.choice(SYLLABLES) for _ in range(rng.randint(2, 3)))
        if stem not in used:
            used.add(stem)
            return stem


def generate_document(rng: random.Random, used: set):
    n_topic = rng.randint(8, 12)
    n_filler = rng.randint(26, 34)
    topic = [make_stem(rng, used) for _ in range(n_topic)]
    filler = [make_stem(rng, used) for _ in range(n_filler)]

    # topic stems repeat a lot (Zipf-ish), fillers mostly appear once or twice
    topic_weights = [1.0 / (r + 1) ** 0.5 for r in range(n_topic)]

    tokens = []
    n_sentences = rng.randint(8, 12)
    for _ in range(n_sentences):
        length = rng.randint(6, 11)
        for _ in range(length):
            if rng.random() < 0.61:
                tokens.append(rng.choices(topic, weights=topic_weights, k=1)[0])
            else:
                tokens.append(rng.choice(filler))

    # gold: most topic stems, the occasional filler the annotator liked,
    # and a few stems absent from the filtered text (verbs etc.)
    gold = set()
    for rank, stem in enumerate(topic):
        keep = 0.95 if rank < 5 else 0.75
        if rng.random() < keep:
            gold.add(stem)
    for stem in rng.sample(filler, k=rng.randint(0, 1)):
        gold.add(stem)
    for _ in range(rng.randint(2, 5)):
        gold.add(make_stem(rng, used))  # never occurs in the text

    return tokens, sorted(gold)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--docs", type=int, default=120)
    parser.add_argument("--seed", type=int, default=20240801)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    used = set()
    for d in range(args.docs):
        tokens, gold = generate_document(rng, used)
        doc_id = f"doc{d:03d}"
        (args.out / f"{doc_id}.tokens").write_text(" ".join(tokens) + "\n")
        (args.out / f"{doc_id}.gold").write_text(" ".join(gold) + "\n")
    print(f"wrote {args.docs} documents to {args.out}")


if __name__ == "__main__":
    main()
