#!/usr/bin/env python3
"""Regenerates corpus.conllu: handcrafted edge cases followed by seeded
random clauses. Run from this directory; the output is committed."""

import random

HANDCRAFTED = [
    # fish / worm
    """# text = The hungry fish ate the tasty worm.
1	The	the	DET	DT	_	3	det	_	_
2	hungry	hungry	ADJ	JJ	_	3	amod	_	_
3	fish	fish	NOUN	NN	_	4	nsubj	_	_
4	ate	eat	VERB	VBD	_	0	root	_	_
5	the	the	DET	DT	_	7	det	_	_
6	tasty	tasty	ADJ	JJ	_	7	amod	_	_
7	worm	worm	NOUN	NN	_	4	dobj	_	_
8	.	.	PUNCT	.	_	4	punct	_	_""",
    # UD v2 labels, multiword token range and an empty node
    """# text = Jim's friend bought fresh bread.
1-2	Jim's	_	_	_	_	_	_	_	_
1	Jim	Jim	PROPN	NNP	_	3	nmod:poss	_	_
2	's	's	PART	POS	_	1	case	_	_
3	friend	friend	NOUN	NN	_	4	nsubj	_	_
4	bought	buy	VERB	VBD	_	0	root	_	_
4.1	bought	buy	VERB	VBD	_	_	_	3:nsubj	_
5	fresh	fresh	ADJ	JJ	_	6	amod	_	_
6	bread	bread	NOUN	NN	_	4	obj	_	_
7	.	.	PUNCT	.	_	4	punct	_	_""",
    # passive subject: not an nsubj by default
    """# text = The old letter was written quickly.
1	The	the	DET	DT	_	3	det	_	_
2	old	old	ADJ	JJ	_	3	amod	_	_
3	letter	letter	NOUN	NN	_	5	nsubj:pass	_	_
4	was	be	AUX	VBD	_	5	aux:pass	_	_
5	written	write	VERB	VBN	_	0	root	_	_
6	quickly	quickly	ADV	RB	_	5	advmod	_	_""",
    # Stanford passive label
    """1	Songs	song	NOUN	NNS	_	3	nsubjpass	_	_
2	were	be	AUX	VBD	_	3	auxpass	_	_
3	sung	sing	VERB	VBN	_	0	root	_	_""",
    # clausal complement only: no object pair
    """# text = She said that rain fell.
1	She	she	PRON	PRP	_	2	nsubj	_	_
2	said	say	VERB	VBD	_	0	root	_	_
3	that	that	SCONJ	IN	_	5	mark	_	_
4	rain	rain	NOUN	NN	_	5	nsubj	_	_
5	fell	fall	VERB	VBD	_	2	ccomp	_	_""",
    # pronoun object, copula, adjective on a pronoun
    """1	They	they	PRON	PRP	_	2	nsubj	_	_
2	like	like	VERB	VBP	_	0	root	_	_
3	it	it	PRON	PRP	_	2	obj	_	_
4	.	.	PUNCT	.	_	2	punct	_	_""",
    """# text = The air is fresh.
1	The	the	DET	DT	_	2	det	_	_
2	air	air	NOUN	NN	_	4	nsubj	_	_
3	is	be	AUX	VBZ	_	4	cop	_	_
4	fresh	fresh	ADJ	JJ	_	0	root	_	_""",
    # missing lemma falls back to the form; mixed case
    """1	Kevin	_	PROPN	NNP	_	2	nsubj	_	_
2	Sang	SING	VERB	VBD	_	0	root	_	_
3	loud	loud	ADJ	JJ	_	4	amod	_	_
4	Songs	_	NOUN	NNS	_	2	dobj	_	_""",
    # two adjectives on the object, two objects via conj (only the first is obj)
    """1	we	we	PRON	PRP	_	2	nsubj	_	_
2	eat	eat	VERB	VBP	_	0	root	_	_
3	hot	hot	ADJ	JJ	_	5	amod	_	_
4	spicy	spicy	ADJ	JJ	_	5	amod	_	_
5	soup	soup	NOUN	NN	_	2	obj	_	_
6	and	and	CCONJ	CC	_	8	cc	_	_
7	cold	cold	ADJ	JJ	_	8	amod	_	_
8	rice	rice	NOUN	NN	_	5	conj	_	_""",
    # amod whose head is a verb (parser noise) and an ADJ-tagged obj
    """1	dogs	dog	NOUN	NNS	_	2	nsubj	_	_
2	run	run	VERB	VBP	_	0	root	_	_
3	fast	fast	ADJ	JJ	_	2	amod	_	_
4	home	home	ADJ	JJ	_	2	obj	_	_""",
    # AUX head for an obj edge is not a verb
    """1	cats	cat	NOUN	NNS	_	2	nsubj	_	_
2	have	have	AUX	VBP	_	0	root	_	_
3	claws	claw	NOUN	NNS	_	2	obj	_	_""",
    # subtyped labels
    """1	the	the	DET	DT	_	3	det	_	_
2	small	small	ADJ	JJ	_	3	amod	_	_
3	child	child	NOUN	NN	_	4	nsubj:outer	_	_
4	reads	read	VERB	VBZ	_	0	root	_	_
5	old	old	ADJ	JJ	_	6	amod:att	_	_
6	books	book	NOUN	NNS	_	4	obj:lvc	_	_""",
    # comment-only block next to an empty sentence boundary
    """# sent_id = lonely-comment
# text = _
1	Hello	hello	INTJ	UH	_	0	root	_	_""",
]

VERBS = ["eat", "drink", "read", "write", "buy", "sell", "see", "like", "cook", "open"]
NOUNS = ["apple", "bread", "water", "milk", "book", "letter", "door", "window",
         "child", "teacher", "dog", "cat", "friend", "meal", "soup", "story"]
PROPN = ["Paris", "Mary"]
ADJS = ["red", "fresh", "old", "young", "hungry", "tasty", "big", "small", "cold", "happy"]


def inflect(verb, rng):
    return rng.choice([verb, verb + "s", verb + "ed"])


def noun_phrase(rng, start, head_of_np, rel, nouns):
    """Returns (tokens, noun_index). Tokens are tuples without the head of the noun filled."""
    tokens = []
    idx = start
    if rng.random() < 0.6:
        tokens.append([idx, "the", "the", "DET", "DT", None, "det"])
        idx += 1
    adj_tokens = []
    for _ in range(rng.choice([0, 0, 1, 1, 2])):
        a = rng.choice(ADJS)
        adj_tokens.append([idx, a, a, "ADJ", "JJ", None, "amod"])
        idx += 1
    tokens.extend(adj_tokens)
    noun_upos = "NOUN"
    noun = rng.choice(nouns)
    if rng.random() < 0.1:
        noun = rng.choice(PROPN)
        noun_upos = "PROPN"
    noun_idx = idx
    tokens.append([idx, noun, noun.lower(), noun_upos, "NN", head_of_np, rel])
    for t in tokens:
        if t[5] is None:
            t[5] = noun_idx
    return tokens, noun_idx


def random_sentence(rng):
    tokens = []
    # subject
    subj_is_pron = rng.random() < 0.15
    if subj_is_pron:
        tokens.append([1, "he", "he", "PRON", "PRP", None, "nsubj"])
        nxt = 2
    else:
        subj, _ = noun_phrase(rng, 1, None, "nsubj", NOUNS)
        tokens.extend(subj)
        nxt = subj[-1][0] + 1
    verb_idx = nxt
    verb = rng.choice(VERBS)
    verb_upos = "VERB" if rng.random() < 0.95 else "AUX"
    tokens.append([verb_idx, inflect(verb, rng), verb, verb_upos, "VBD", 0, "root"])
    # the subject noun's head is the verb
    for t in tokens:
        if t[6] == "nsubj":
            t[5] = verb_idx
    nxt = verb_idx + 1
    obj_label = rng.choice(["obj", "dobj", "obj", "iobj", "obl"])
    if rng.random() < 0.85:
        obj, _ = noun_phrase(rng, nxt, verb_idx, obj_label, NOUNS)
        tokens.extend(obj)
        nxt = obj[-1][0] + 1
    if rng.random() < 0.2:
        tokens.append([nxt, "quickly", "quickly", "ADV", "RB", verb_idx, "advmod"])
        nxt += 1
    tokens.append([nxt, ".", ".", "PUNCT", ".", verb_idx, "punct"])
    lines = []
    for t in tokens:
        lemma = t[2] if rng.random() > 0.05 else "_"
        lines.append("\t".join(str(x) for x in [t[0], t[1], lemma, t[3], t[4], "_", t[5], t[6], "_", "_"]))
    return "\n".join(lines)


def main():
    rng = random.Random(20181001)
    blocks = list(HANDCRAFTED)
    for i in range(140):
        blocks.append(f"# sent_id = gen-{i}\n" + random_sentence(rng))
    with open("corpus.conllu", "w", encoding="utf-8") as f:
        f.write("\n\n".join(blocks) + "\n\n")


if __name__ == "__main__":
    main()
