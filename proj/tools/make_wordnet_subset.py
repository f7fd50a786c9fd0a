#!/usr/bin/env python3
"""Cut a small WordNet 3.0 database down to the frequent part of the lexicon.

Keeps every sense of the seed lemmas plus the hypernym closure of those
senses. Only hypernym pointers are written and glosses are dropped, so the
result is read correctly by paracoh but by few other WordNet tools.

Seeds are the most frequent lemmas per part of speech according to the
SemCor counts in cntlist.rev, plus any extra lemmas listed in --extra files.
For extra seeds the co-hyponyms of the first sense are kept as well.

    tools/make_wordnet_subset.py /path/to/wordnet-3.0 data/wordnet-lite \
        --top 2500 --extra tools/wordnet_lite_seeds.txt
"""

import argparse
import collections
import os
import shutil

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
SS_TYPE_POS = {"1": "n", "2": "v", "3": "a", "4": "r", "5": "a"}
HYPERNYM_POINTERS = ("@", "@i")


def read_header(path):
    header = []
    with open(path, encoding="latin-1") as f:
        for line in f:
            if not line.startswith("  "):
                break
            header.append(line)
    return header


def read_data(path, pos):
    """offset -> (lexfile, ss_type, words, hypernym offsets)"""
    synsets = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            body = line.split(" |", 1)[0].split()
            offset, lexfile, ss_type = body[0], body[1], body[2]
            count = int(body[3], 16)
            words = [body[4 + 2 * i] for i in range(count)]
            i = 4 + 2 * count
            nptr = int(body[i])
            i += 1
            hypernyms = []
            for _ in range(nptr):
                sym, target, tpos = body[i], body[i + 1], body[i + 2]
                if sym in HYPERNYM_POINTERS and tpos == pos:
                    hypernyms.append((sym, target))
                i += 4
            synsets[offset] = (lexfile, ss_type, words, hypernyms)
    return synsets


def read_index(path):
    """lemma -> list of offsets, in sense order"""
    index = {}
    with open(path, encoding="latin-1") as f:
        for line in f:
            if line.startswith(" "):
                continue
            fields = line.split()
            nsyn, nptr = int(fields[2]), int(fields[3])
            first = 4 + nptr + 2
            index[fields[0]] = fields[first:first + nsyn]
    return index


def read_counts(path):
    counts = collections.Counter()
    with open(path, encoding="latin-1") as f:
        for line in f:
            key, _, tag_count = line.split()
            lemma, rest = key.split("%", 1)
            counts[(SS_TYPE_POS[rest[0]], lemma.lower())] += int(tag_count)
    return counts


def write_database(out_dir, pos, synsets, header_lines):
    """synsets: list of (key, lexfile, ss_type, words, [(symbol, key)]).
    Writes data.<pos> with byte offsets as synset addresses and returns
    key -> offset."""
    header = "".join(header_lines)
    offsets = {}
    position = len(header.encode("latin-1"))
    lines = []
    for key, lexfile, ss_type, words, hypernyms in synsets:
        offsets[key] = position
        # Record length does not depend on offset values (always 8 digits).
        line = format_record(0, lexfile, ss_type, words, [(s, 0) for s, _ in hypernyms], pos)
        position += len(line.encode("latin-1"))
    for key, lexfile, ss_type, words, hypernyms in synsets:
        ptrs = [(s, offsets[t]) for s, t in hypernyms]
        lines.append(format_record(offsets[key], lexfile, ss_type, words, ptrs, pos))
    with open(os.path.join(out_dir, "data." + POS_FILES[pos]), "w", encoding="latin-1", newline="\n") as f:
        f.write(header)
        f.writelines(lines)
    return offsets


def format_record(offset, lexfile, ss_type, words, pointers, pos):
    parts = ["%08d" % offset, lexfile, ss_type, "%02x" % len(words)]
    for w in words:
        parts += [w, "0"]
    parts.append("%03d" % len(pointers))
    for sym, target in pointers:
        parts += [sym, "%08d" % target, pos, "0000"]
    return " ".join(parts) + " |\n"


def write_index(out_dir, pos, index, header_lines):
    with open(os.path.join(out_dir, "index." + POS_FILES[pos]), "w", encoding="latin-1", newline="\n") as f:
        f.write("".join(header_lines))
        for lemma in sorted(index):
            offs = index[lemma]
            f.write("%s %s %d 1 @ %d 0 %s\n" % (lemma, pos, len(offs), len(offs), " ".join("%08d" % o for o in offs)))


def write_exceptions(out_dir, pos, entries):
    with open(os.path.join(out_dir, POS_FILES[pos] + ".exc"), "w", encoding="latin-1", newline="\n") as f:
        for form in sorted(entries):
            f.write(form + " " + " ".join(entries[form]) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("source")
    ap.add_argument("out")
    ap.add_argument("--top", type=int, default=2500, help="seed lemmas per part of speech")
    ap.add_argument("--extra", action="append", default=[], help="file of extra seed lemmas")
    args = ap.parse_args()

    counts = read_counts(os.path.join(args.source, "cntlist.rev"))
    extra = set()
    for path in args.extra:
        with open(path) as f:
            extra.update(w.strip().lower() for w in f if w.strip() and not w.startswith("#"))

    os.makedirs(args.out, exist_ok=True)
    total = 0
    for pos, name in POS_FILES.items():
        data = read_data(os.path.join(args.source, "data." + name), pos)
        index = read_index(os.path.join(args.source, "index." + name))
        ranked = sorted((c, lemma) for (p, lemma), c in counts.items() if p == pos)
        seeds = {lemma for _, lemma in sorted(ranked, key=lambda t: (-t[0], t[1]))[: args.top]}
        extra_pos = {w.replace(" ", "_") for w in extra}
        seeds |= extra_pos

        hyponyms = collections.defaultdict(list)
        for off, (_, _, _, hyps) in data.items():
            for _, target in hyps:
                hyponyms[target].append(off)

        keep = set()
        stack = [off for lemma in seeds for off in index.get(lemma, [])]
        for lemma in sorted(extra_pos):
            senses = index.get(lemma, [])
            if senses:
                for _, parent in data[senses[0]][3]:
                    stack.extend(hyponyms[parent])
        while stack:
            off = stack.pop()
            if off in keep:
                continue
            keep.add(off)
            stack.extend(t for _, t in data[off][3])

        ordered = sorted(keep)
        records = [(off, *data[off][:3], [(s, t) for s, t in data[off][3] if t in keep]) for off in ordered]
        offsets = write_database(args.out, pos, records, read_header(os.path.join(args.source, "data." + name)))

        lite_index = {}
        for lemma, offs in index.items():
            kept = [offsets[o] for o in offs if o in keep]
            if kept:
                lite_index[lemma] = kept
        write_index(args.out, pos, lite_index, read_header(os.path.join(args.source, "index." + name)))

        exceptions = {}
        with open(os.path.join(args.source, name + ".exc"), encoding="latin-1") as f:
            for line in f:
                form, *bases = line.split()
                bases = [b for b in bases if b in lite_index]
                if bases:
                    exceptions[form] = bases
        write_exceptions(args.out, pos, exceptions)
        total += len(keep)
        print("%s: %d synsets, %d lemmas, %d exceptions" % (name, len(keep), len(lite_index), len(exceptions)))

    shutil.copy(os.path.join(args.source, "LICENSE"), os.path.join(args.out, "LICENSE"))
    print("total synsets:", total)


if __name__ == "__main__":
    main()
