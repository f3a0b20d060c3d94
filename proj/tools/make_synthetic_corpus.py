#!/usr/bin/env python3
"""Generate the bundled synthetic operator-conversation corpus.

The output has the same headline shape as the published crawl: after
filtering on the terms xl, xlcare, xl123 and the window 2013-07-01 to
2013-07-04 (+07:00) it holds 1413 records from 1413 actors forming 1026
aggregated interaction edges, with 745 negative and 102 positive labels.
A few off-topic, out-of-window and defective lines are mixed in so the
filter and the parser have something to do.

Usage: make_synthetic_corpus.py [--seed N] [--out PATH]
"""

import argparse
import json
import random
from datetime import datetime, timedelta, timezone

NODES = 1413
EDGES = 1026
RECORDS = 1413
NEGATIVE = 745
POSITIVE = 102

WIB = timezone(timedelta(hours=7))
WINDOW_START = datetime(2013, 7, 1, tzinfo=WIB)
WINDOW_HOURS = 72

# (display handle, distinct neighbours); every hub after the first hangs off it
HUBS = [
    ("XLCare", 437),
    ("XL123", 59),
    ("XLandMe", 16),
    ("PejuangKuis", 13),
    ("Viccent22", 6),
    ("RAFLATAHUGS", 5),
    ("TanteYulia", 4),
    ("Adhantrio", 4),
    ("Widideon", 3),
    ("Zulfincitra", 3),
]

NEGATIVE_TEXT = ["sinyal hilang lagi", "internet lemot dari pagi", "pulsa kepotong terus",
                 "kenapa paket belum aktif", "komplain belum dibalas"]
POSITIVE_TEXT = ["makasih sudah dibantu", "sinyal sudah normal", "promo kuisnya seru"]
OTHER_TEXT = ["cara cek kuota gimana", "ikut kuis hari ini", "info paket malam dong",
              "retweet ya", "siapa yang ikut"]
OFF_TOPIC_TEXT = ["nonton bola nanti malam", "macet parah di sudirman", "selamat pagi semua"]

SYLLABLES = ["ka", "ri", "no", "sa", "di", "mu", "ta", "le", "wi", "yo", "ra", "be",
             "an", "fi", "go", "hu", "el", "ip", "zu", "ne"]


def make_names(rng, count, taken):
    names = []
    while len(names) < count:
        base = "".join(rng.choice(SYLLABLES) for _ in range(rng.randint(2, 4)))
        name = base + (str(rng.randint(1, 99)) if rng.random() < 0.5 else "")
        if rng.random() < 0.3:
            name = name.capitalize()
        key = name.lower()
        if key in taken or "xl" in key:
            continue
        taken.add(key)
        names.append(name)
    return names


def build_edges(rng):
    taken = {h.lower() for h, _ in HUBS}
    edges = []
    nodes = [h for h, _ in HUBS]

    hub_names = [h for h, _ in HUBS]
    root = hub_names[0]
    leaves_of_root = []
    for name, degree in HUBS:
        if name == root:
            continue
        edges.append((name, root))
    for name, degree in HUBS:
        have = degree - (len(HUBS) - 1 if name == root else 1)
        fresh = make_names(rng, have, taken)
        nodes.extend(fresh)
        edges.extend((leaf, name) for leaf in fresh)
        if name == root:
            leaves_of_root = fresh

    # a handful of customers also talk to each other
    rng.shuffle(leaves_of_root)
    for i in range(0, 40, 2):
        edges.append((leaves_of_root[i], leaves_of_root[i + 1]))

    # small side conversations: stars of four, paths of three, pairs
    def side(size_edges, shape):
        fresh = make_names(rng, size_edges + 1, taken)
        nodes.extend(fresh)
        if shape == "star":
            edges.extend((leaf, fresh[0]) for leaf in fresh[1:])
        else:
            edges.extend(zip(fresh, fresh[1:]))

    for _ in range(100):
        side(3, "star")
    for _ in range(50):
        side(2, "path")
    remaining = EDGES - len(edges)
    for _ in range(remaining):
        side(1, "path")
    assert len(edges) == EDGES
    return nodes, edges, taken


def timestamp(rng, inside=True):
    if inside:
        offset = timedelta(seconds=rng.randrange(WINDOW_HOURS * 3600))
        when = WINDOW_START + offset
    else:
        when = WINDOW_START + timedelta(hours=WINDOW_HOURS + rng.randrange(1, 48))
    if rng.random() < 0.5:
        return when.strftime("%Y-%m-%dT%H:%M:%S+07:00")
    return when.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2013)
    parser.add_argument("--out", default="tests/data/xl_synthetic.jsonl")
    args = parser.parse_args()
    rng = random.Random(args.seed)

    nodes, edges, taken = build_edges(rng)
    isolated = make_names(rng, NODES - len(nodes), taken)

    # one record per edge, isolated actors post without mentions, and the
    # remainder are repeat complaints on existing edges
    conversations = [(a, [b]) for a, b in edges]
    conversations += [(a, []) for a in isolated]
    hub_edges = [e for e in edges if e[1] == HUBS[0][0]]
    while len(conversations) < RECORDS:
        a, b = rng.choice(hub_edges)
        conversations.append((a, [b]))
    rng.shuffle(conversations)

    labels = ["negative"] * NEGATIVE + ["positive"] * POSITIVE
    labels += ["unknown"] * (RECORDS - len(labels))
    rng.shuffle(labels)

    lines = []
    for i, ((author, mentions), label) in enumerate(zip(conversations, labels)):
        pool = {"negative": NEGATIVE_TEXT, "positive": POSITIVE_TEXT}.get(label, OTHER_TEXT)
        text = " ".join("@" + m for m in mentions)
        text = (text + " " if text else "") + rng.choice(pool)
        record = {
            "id": str(100000 + i),
            "author": "@" + author,
            "mentions": ["@" + m for m in mentions],
            "hashtags": [rng.choice(["XL", "xl", "XLCare", "XL123"])] if rng.random() < 0.6 else [],
            "timestamp": timestamp(rng),
            "text": text + ("" if rng.random() < 0.5 else " #XL"),
        }
        if not record["hashtags"] and "xl" not in record["text"].lower():
            record["hashtags"] = ["xl"]
        if label != "unknown":
            record["sentiment"] = label
        lines.append(json.dumps(record, ensure_ascii=False))

    # noise the filter or the parser must drop
    noise_names = make_names(rng, 60, taken)
    for i in range(30):
        lines.append(json.dumps({
            "id": "n%d" % i, "author": "@" + noise_names[i], "mentions": ["@" + noise_names[i + 30]],
            "hashtags": ["bola"], "timestamp": timestamp(rng), "sentiment": "neutral",
            "text": rng.choice(OFF_TOPIC_TEXT)}))
    for i in range(20):
        lines.append(json.dumps({
            "id": "late%d" % i, "author": "@" + noise_names[i], "mentions": ["@XLCare"],
            "hashtags": ["XL"], "timestamp": timestamp(rng, inside=False), "sentiment": "negative",
            "text": "@XLCare masih gangguan"}))
    lines.append('{"id": "broken", "author": "@x"')
    lines.append('{"id": "noauthor", "mentions": ["@XLCare"], "timestamp": "2013-07-01T10:00:00Z"}')
    lines.append('{"id": "badtime", "author": "@y", "timestamp": "1 July 2013"}')
    rng.shuffle(lines)

    with open(args.out, "w", encoding="utf-8", newline="\n") as out:
        out.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
