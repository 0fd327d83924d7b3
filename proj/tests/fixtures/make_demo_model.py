#!/usr/bin/env python3
"""Writes demo_model.json, a small table knowledge model used by the CLI
tests and the README walkthrough. Output is deterministic."""

import hashlib
import json
import math
import sys

ROOTS = [
    "PersonX drove PersonY to the airport.",
    "PersonX gave PersonY a cake.",
    "PersonX lost the keys.",
    "PersonX went to the store. PersonX bought a cake.",
    "PersonX lost the keys. PersonX was late.",
    "PersonX drove PersonY to the airport. PersonY was late.",
]

POOLS = {
    "xWant": ["go home", "get some rest", "thank PersonY"],
    "oWant": ["thank PersonX", "catch a flight", "go home"],
    "xReact": ["happy", "tired", "sad", "excited"],
    "oReact": ["grateful", "happy", "sad", "surprised"],
    "xAttr": ["helpful", "kind", "tired"],
    "xNeed": ["get a car", "get the keys"],
    "xIntent": ["help PersonY", "be helpful"],
    "xEffect": ["gets tired", "drives home"],
    "oEffect": ["catches a flight", "says thanks"],
}

PREFIX = {
    "xWant": "PersonX wants", "xReact": "PersonX is", "xNeed": "PersonX needs",
    "xIntent": "PersonX wants", "xAttr": "PersonX is", "xEffect": "PersonX",
    "oReact": "PersonX is", "oEffect": "PersonX", "oWant": "PersonX wants",
}

ANSWER_WORDS = ["grateful", "tired", "sad", "happy", "thank", "PersonX", "go", "home",
                "disgusted", "surprised", "afraid", "angry", "trusting", "excited"]

RELATIONS = list(POOLS)
END = "<eos>"
MAX_ORDER = 4


def tokens(text):
    out = []
    for word in text.split():
        current = ""
        for ch in word:
            if ch in '.,!?;:"()':
                if current:
                    out.append(current)
                out.append(ch)
                current = ""
            else:
                current += ch
        if current:
            out.append(current)
    return out


def weight(*key):
    h = hashlib.sha256("|".join(key).encode()).digest()
    return 1 + int.from_bytes(h[:4], "big") % 9


def dist(weights):
    total = sum(weights.values())
    return {t: math.log(w / total) for t, w in sorted(weights.items())}


def generation_rules(context, relation, answer_words=False):
    phrases = POOLS[relation]
    chosen = {p: weight(context, relation, p) for p in phrases}
    if answer_words:
        # Roots are also scoring contexts: give answer words some first-token
        # mass so answers separate.
        for t in ANSWER_WORDS:
            chosen.setdefault(t, weight(context, relation, "answer", t) / 4)
    rules = []
    seqs = [(tokens(p) + [END], w) for p, w in chosen.items()]
    prefixes = {()}
    for seq, _ in seqs:
        for i in range(1, len(seq)):
            prefixes.add(tuple(seq[:i]))
    for prefix in sorted(prefixes):
        nxt = {}
        for seq, w in seqs:
            if tuple(seq[:len(prefix)]) == prefix and len(seq) > len(prefix):
                nxt[seq[len(prefix)]] = nxt.get(seq[len(prefix)], 0) + w
        rules.append({"context": context, "relation": relation,
                      "prefix": list(prefix[-MAX_ORDER:]), "logprobs": dist(nxt)})
    return rules


def scoring_rules(context):
    rules = []
    for relation in RELATIONS:
        w = {t: weight(context, relation, "answer", t) for t in ANSWER_WORDS}
        w[END] = 3
        rules.append({"context": context, "relation": relation, "prefix": [],
                      "logprobs": dist(w)})
    return rules


def main(path):
    rules = []
    generation_contexts = list(ROOTS) + sorted({p for ps in POOLS.values() for p in ps})
    for ctx in generation_contexts:
        for rel in RELATIONS:
            rules.extend(generation_rules(ctx, rel, ctx in ROOTS))
    scoring_contexts = ["PersonX"] + sorted(
        {PREFIX[r] + " " + p for r, ps in POOLS.items() for p in ps})
    for ctx in scoring_contexts:
        rules.extend(scoring_rules(ctx))

    vocab = {END}
    for text in generation_contexts + scoring_contexts + ANSWER_WORDS + ROOTS:
        vocab.update(tokens(text))
    for r in rules:
        vocab.update(r["logprobs"])
    # Context rules are keyed by detokenized text; merge rules that collide.
    seen = {}
    for r in rules:
        key = (r["context"], r["relation"], tuple(r["prefix"]))
        if key in seen:
            sys.exit(f"duplicate rule {key}")
        seen[key] = r
    model = {"vocabulary": sorted(vocab), "max_order": MAX_ORDER, "smoothing_mass": 0.02,
             "end_token": END, "rules": rules}
    with open(path, "w") as f:
        json.dump(model, f, separators=(",", ":"))
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "demo_model.json")
