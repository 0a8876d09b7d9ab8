#!/usr/bin/env python3
# Copyright 2026 The SensPick Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the synthetic fixtures under tests/fixtures.

The output is deterministic; rerunning it must leave a clean git tree.
"""

import argparse
import json
import random
from pathlib import Path

FILLER = ["the", "a", "we", "saw", "there", "near", "today", "it", "was", "of", "and", "then"]

# lemma -> list of (sense_id, cue words). Glosses reuse the cue words so
# the gloss route has lexical overlap with the right contexts.
OVERFIT_SENSES = {
    ("bank", "n"): [
        ("bank%1", "sloping land beside a river with water and mud", ["river", "water", "mud", "shore"]),
        ("bank%2", "an institution that keeps money and gives loans", ["money", "loan", "cash", "account"]),
        ("bank%3", "a row of similar machines such as keys or lights", ["row", "keys", "lights", "switches"]),
    ],
    ("bass", "n"): [
        ("bass%1", "a fish caught in a lake by anglers", ["fish", "lake", "angler", "catch"]),
        ("bass%2", "the lowest voice in music sung or played on a guitar", ["music", "guitar", "voice", "song"]),
    ],
    ("plant", "n"): [
        ("plant%1", "a factory where workers build products with machines", ["factory", "workers", "build", "products"]),
        ("plant%2", "a living organism with leaves roots and green stems", ["leaves", "roots", "green", "garden"]),
    ],
    ("crane", "v"): [
        ("crane%1", "stretch the neck to look over a crowd", ["neck", "look", "crowd", "stretch"]),
        ("crane%2", "lift a heavy load with a machine on a construction site", ["lift", "heavy", "load", "site"]),
        ("crane%3", "move cautiously like a wading bird in a marsh", ["bird", "marsh", "wading", "cautiously"]),
    ],
}

# Hypernyms for part of the overfit inventory, so expansion depth matters.
OVERFIT_EXTRA = [
    ("slope%1", "slope", "n", 1, "", "bank%1", "an elevated geological formation of land"),
    ("institution%1", "institution", "n", 1, "", "bank%2", "an organization founded for a public purpose"),
    ("organism%1", "organism", "n", 1, "", "plant%2", "a living thing that can grow"),
    ("building%1", "building", "n", 1, "", "plant%1", "a structure with walls and a roof"),
]
OVERFIT_HYPERNYMS = {"bank%1": "slope%1", "bank%2": "institution%1", "plant%2": "organism%1", "plant%1": "building%1"}

# Per-lemma sense counts: (train, held-out). Training majority is strict and
# the held-out majority-class counts are 3 + 2 + 3 + 2 = 10 of 20.
OVERFIT_COUNTS = {
    ("bank", "n"): [(6, 3), (4, 1), (3, 1)],
    ("bass", "n"): [(7, 2), (5, 3)],
    ("plant", "n"): [(7, 3), (5, 2)],
    ("crane", "v"): [(6, 2), (4, 2), (3, 1)],
}


def inventory_line(sense_id, lemma, pos, rank, hypernyms, hyponyms, gloss):
    return "\t".join([sense_id, lemma, pos, str(rank), hypernyms, hyponyms, gloss])


def make_sentence(rng, lemma, cues):
    # The target's immediate neighbours are cue words, with filler further out.
    near = rng.sample(cues, 3)
    left = rng.sample(FILLER, rng.randrange(1, 4)) + [near[0]]
    right = [near[1]] + rng.sample(FILLER, rng.randrange(1, 3)) + [near[2]]
    return left + [lemma] + right, len(left)


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as out:
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")


def overfit(root: Path):
    rng = random.Random(20260101)
    root.mkdir(parents=True, exist_ok=True)
    lines = ["# sense_id\tlemma\tpos\trank\thypernyms\thyponyms\tgloss"]
    for (lemma, pos), senses in OVERFIT_SENSES.items():
        for rank, (sid, gloss, _) in enumerate(senses, start=1):
            lines.append(inventory_line(sid, lemma, pos, rank, OVERFIT_HYPERNYMS.get(sid, ""), "", gloss))
    for extra in OVERFIT_EXTRA:
        lines.append(inventory_line(*extra))
    (root / "inventory.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    train, heldout = [], []
    for (lemma, pos), senses in OVERFIT_SENSES.items():
        for (sid, _, cues), (n_train, n_held) in zip(senses, OVERFIT_COUNTS[(lemma, pos)]):
            for split, count in ((train, n_train), (heldout, n_held)):
                for _ in range(count):
                    tokens, target = make_sentence(rng, lemma, cues)
                    split.append({"tokens": tokens, "target": target, "lemma": lemma, "pos": pos, "gold": [sid]})
    rng.shuffle(train)
    rng.shuffle(heldout)
    assert len(train) == 50 and len(heldout) == 20
    for prefix, split in (("train", train), ("heldout", heldout)):
        for i, rec in enumerate(split):
            rec_id = {"id": f"{prefix}.d000.s{i:03d}.t000"}
            rec_id.update(rec)
            split[i] = rec_id
    write_jsonl(root / "train.jsonl", train)
    write_jsonl(root / "heldout.jsonl", heldout)

    # Words sharing a sense topic get embeddings around a common centroid,
    # the way related words cluster in pre-trained vectors.
    dim = 16
    emb_rng = random.Random(7)
    topic_of = {}
    for senses in OVERFIT_SENSES.values():
        for sid, gloss, cues in senses:
            for word in cues + gloss.split():
                topic_of.setdefault(word, sid)
    vocab = set(FILLER) | set(topic_of) | {lemma for lemma, _ in OVERFIT_SENSES}
    for extra in OVERFIT_EXTRA:
        vocab.update(extra[-1].split())
    centroid = {sid: [emb_rng.gauss(0.0, 1.0) for _ in range(dim)]
                for senses in OVERFIT_SENSES.values() for sid, _, _ in senses}
    with open(root / "embeddings.txt", "w", encoding="utf-8") as out:
        for word in sorted(vocab):
            base = centroid.get(topic_of.get(word), [0.0] * dim)
            if word in FILLER:
                base = [0.0] * dim
            row = [b + emb_rng.gauss(0.0, 0.3) for b in base]
            out.write(word + " " + " ".join(f"{v:.6f}" for v in row) + "\n")

    (root / "config.yaml").write_text(
        "# Overfit fixture: training defaults except epochs; a small encoder\n"
        "# keeps the run within a few minutes on one CPU core.\n"
        "epochs: 200\n"
        "embedding_dim: 16\n"
        "hidden_units: 32\n",
        encoding="utf-8",
    )


def toy(root: Path):
    root.mkdir(parents=True, exist_ok=True)
    rows = [
        # A 3-deep first-parent chain: thing <- object <- artifact <- key%1
        ("thing%1", "thing", "n", 1, "", "object%1", "a separate and self-contained entity"),
        ("object%1", "object", "n", 1, "thing%1", "artifact%1", "a tangible and visible entity"),
        ("artifact%1", "artifact", "n", 1, "object%1", "key%1,tool%1", "a man-made object taken as a whole"),
        ("key%1", "key", "n", 1, "artifact%1", "latchkey%1,passkey%1", "metal device shaped to open a lock"),
        ("key%2", "key", "n", 2, "", "", "a list of answers to a test"),
        ("key%3", "key", "n", 3, "", "", "pitch of the voice; \"speak in a low key\""),
        ("tool%1", "tool", "n", 1, "artifact%1", "", "an implement used in a craft"),
        ("latchkey%1", "latchkey", "n", 1, "key%1", "", "a key that opens a latch"),
        ("passkey%1", "passkey", "n", 1, "key%1", "skeleton_key%1", "a key that opens many locks"),
        ("skeleton_key%1", "skeleton_key", "n", 1, "passkey%1", "", "a key filed to open any lock"),
        ("open%1", "open", "v", 1, "", "", "cause to become open"),
        ("open%2", "open", "v", 2, "", "", "start to operate or function"),
    ]
    lines = ["# sense_id\tlemma\tpos\trank\thypernyms\thyponyms\tgloss"]
    lines += [inventory_line(*row) for row in rows]
    (root / "inventory.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    # First-sense fixture: two of three golds are rank-1 senses.
    first_sense = [
        {"id": "fs.d000.s000.t000", "tokens": ["turn", "the", "key", "in", "the", "lock"], "target": 2,
         "lemma": "key", "pos": "n", "gold": ["key%1"]},
        {"id": "fs.d000.s001.t000", "tokens": ["check", "the", "answer", "key"], "target": 3,
         "lemma": "key", "pos": "n", "gold": ["key%2"]},
        {"id": "fs.d000.s002.t000", "tokens": ["open", "the", "door"], "target": 0,
         "lemma": "open", "pos": "v", "gold": ["open%1"]},
    ]
    write_jsonl(root / "first_sense.jsonl", first_sense)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "fixtures")
    args = parser.parse_args()
    overfit(args.out / "overfit")
    toy(args.out / "toy")


if __name__ == "__main__":
    main()
