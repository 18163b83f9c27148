#!/usr/bin/env python3
"""Regenerates the bundled synthetic dataset at tests/fixtures/multiclaim_synth.

Three monolingual sub-tasks (eng/fra/deu), ~100 fact checks and ~20 posts
each, with dev/test splits and gold pairs. Cells use the same literal tuple
format as the real dumps, including awkward rows: embedded newlines inside
quoted cells, doubled quotes, apostrophes, accents, OCR-only posts, and a few
fully out-of-vocabulary posts. Deterministic: rerunning reproduces the same
bytes.

Usage: python3 tools/make_synth_fixture.py [tests/fixtures/multiclaim_synth]
"""

import csv
import json
import os
import random
import sys

rng = random.Random(1337)

VOCAB = {
    "eng": ("avocado bell pepper gender seeds sweeter cooking vaccine cure miracle "
            "moon landing hoax celebrity秘密 quote banana spider egg plastic rice "
            "chip implant tracking virus garlic water lemon detox flat earth shadow "
            "government aliens pyramid energy healing crystal magnet bracelet").split(),
    "fra": ("avocat poivron graines sucre cuisson vaccin remède miracle lune "
            "alunissage canular célébrité citation banane araignée œuf plastique riz "
            "puce implant traçage virus ail eau citron détox terre plate ombre "
            "gouvernement extraterrestres pyramide énergie guérison cristal aimant").split(),
    "deu": ("avocado paprika geschlecht samen süßer kochen impfstoff heilmittel wunder "
            "mond landung schwindel berühmtheit zitat banane spinne ei plastik reis "
            "chip implantat verfolgung virus knoblauch wasser zitrone entgiftung flache "
            "erde schatten regierung außerirdische pyramide energie heilung kristall").split(),
}
ENGLISH_GLOSS = VOCAB["eng"]

VERDICTS = ["False information", "Missing context", "Partly false information"]
SOURCES = ["fb", "ig", "tw"]


def words(lang, n):
    return " ".join(rng.choice(VOCAB[lang]) for _ in range(n))


def gloss(lang, text):
    if lang == "eng":
        return text
    vocab = VOCAB[lang]
    return " ".join(ENGLISH_GLOSS[vocab.index(w) % len(ENGLISH_GLOSS)]
                    if w in vocab else w for w in text.split())


def make_fact_checks(lang, base_id, count):
    rows = []
    for i in range(count):
        fc_id = base_id + i
        original = words(lang, rng.randint(5, 12))
        if i == 3:
            original = "Don't belive this!\nIt said \"cure\" twice: " + original
        if i == 7:
            original = original + " didn't"
        english = gloss(lang, original)
        claim = (f" {original}", f" {english}", [(lang, round(rng.uniform(0.7, 1.0), 2))])
        ts = 1500000000.0 + rng.randint(0, 10 ** 8)
        instances = [(ts, rng.choice(["https://factcheck.example/" + str(fc_id),
                                      rng.choice(SOURCES)]))]
        if rng.random() < 0.1:
            instances = []
        title_roll = rng.random()
        if title_roll < 0.3:
            title = ""
        elif title_roll < 0.6:
            title = repr((words(lang, 3), gloss(lang, words(lang, 3)), [(lang, 1.0)]))
        else:
            title = "Fact check: " + words(lang, 2)
        rows.append((fc_id, repr(claim), repr(instances), title, original, english))
    return rows


def make_posts(lang, base_id, fact_checks, count):
    posts, pairs = [], []
    for i in range(count):
        post_id = base_id + i
        targets = rng.sample(fact_checks, rng.randint(1, 2))
        stolen = []
        for fc in targets:
            tokens = fc[4].split()
            take = max(2, len(tokens) // 2)
            stolen.extend(rng.sample(tokens, min(take, len(tokens))))
        noise = words(lang, rng.randint(2, 10))
        body = " ".join(stolen + noise.split())
        if i in (5, count - 1):
            body = "000 111 9999 %%%"  # shares no vocabulary with any claim
        ts = 1520000000.0 + rng.randint(0, 10 ** 8)
        instances = [(ts, rng.choice(SOURCES))]
        ocr_items = []
        text_cell = ""
        if rng.random() < 0.4:
            # OCR-only post, body possibly repeated like real dumps
            reps = 2 if rng.random() < 0.5 else 1
            ocr_items = [(body, gloss(lang, body), [(lang, 1.0)])] * reps
        else:
            text_cell = repr((body, gloss(lang, body), [(lang, round(rng.uniform(0.8, 1.0), 2))]))
            if rng.random() < 0.3:
                ocr_items = [(words(lang, 3), gloss(lang, words(lang, 3)), [(lang, 0.9)])]
        verdicts = [rng.choice(VERDICTS)] if rng.random() < 0.8 else []
        posts.append((post_id, repr(instances),
                      repr(ocr_items) if ocr_items else "",
                      repr(verdicts) if verdicts else "",
                      text_cell))
        for fc in targets:
            pairs.append((fc[0], post_id))
    return posts, pairs


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/multiclaim_synth"
    os.makedirs(out_dir, exist_ok=True)

    all_fcs, all_posts, all_pairs = [], [], []
    tasks = {}
    for lang, fc_base, post_base in (("eng", 1000, 10000),
                                     ("fra", 2000, 20000),
                                     ("deu", 3000, 30000)):
        fcs = make_fact_checks(lang, fc_base, 100)
        posts, pairs = make_posts(lang, post_base, fcs, 20)
        all_fcs.extend(fcs)
        all_posts.extend(posts)
        all_pairs.extend(pairs)
        post_ids = [p[0] for p in posts]
        tasks[lang] = {
            "fact_checks": [fc[0] for fc in fcs],
            "posts_dev": post_ids[:10],
            "posts_test": post_ids[10:],
        }

    def write_csv(name, header, rows):
        with open(os.path.join(out_dir, name), "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(header)
            w.writerows(rows)

    write_csv("fact_checks.csv", ["fact_check_id", "claim", "instances", "title"],
              [(r[0], r[1], r[2], r[3]) for r in all_fcs])
    write_csv("posts.csv", ["post_id", "instances", "ocr", "verdicts", "text"], all_posts)
    write_csv("pairs.csv", ["fact_check_id", "post_id"], sorted(all_pairs))
    with open(os.path.join(out_dir, "tasks.json"), "w", encoding="utf-8") as f:
        json.dump({"monolingual": tasks}, f, indent=1, sort_keys=True)
        f.write("\n")

    print("wrote %d fact checks, %d posts, %d pairs to %s"
          % (len(all_fcs), len(all_posts), len(all_pairs), out_dir))


if __name__ == "__main__":
    main()
