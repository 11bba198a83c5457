"""
Weak labeling with a polarity lexicon
=====================================

The toolkit never requires hand-annotated tweets.  Instead, a lexicon maps
words to signed polarity weights; a document's score is the sum of its
tokens' weights, and the sign of the score is the label.  These weak labels
then serve as training targets for the supervised models.
"""

from pathlib import Path

from tweetsent.corpus import clean_corpus, load_corpus, load_stopwords
from tweetsent.lexicon import (
    Lexicon,
    label_corpus,
    label_document,
    load_lexicon,
    score_document,
)

DEMO = Path(__file__).resolve().parents[1] / "data" / "demo"

# ---------------------------------------------------------------------------
# 1. A lexicon is a TSV file: token<TAB>weight, '#' comments allowed.
#    Strong words carry bigger weights than mild ones.
lexicon = load_lexicon(DEMO / "lexicon.tsv")
print(f"lexicon with {len(lexicon)} entries")
strongest = sorted(lexicon.entries.items(), key=lambda kv: kv[1])
print("most negative:", strongest[:3])
print("most positive:", strongest[-3:])
print()

# ---------------------------------------------------------------------------
# 2. Scoring sums weights over tokens (absent tokens contribute zero);
#    the sign rule maps score>0 to Positive, <0 to Negative, ==0 to Neutral.
for tokens in (
    ["tasty", "burger", "love"],
    ["soggy", "fries", "awful"],
    ["ordered", "a", "burger"],
    ["love", "hate"],  # opposite words can cancel to Neutral
):
    label, score = label_document(lexicon, tokens)
    print(f"  {' '.join(tokens):24s} score {score:+5.1f} -> {label}")
print()

# ---------------------------------------------------------------------------
# 3. Labels are invariant under rescaling the whole lexicon by a positive
#    constant: only the sign of the score matters.
doubled = Lexicon(entries={t: 2.0 * w for t, w in lexicon.entries.items()})
tokens = ["tasty", "slow", "service"]
print("original score:", score_document(lexicon, tokens),
      "->", label_document(lexicon, tokens)[0])
print("doubled score: ", score_document(doubled, tokens),
      "->", label_document(doubled, tokens)[0])
print()

# ---------------------------------------------------------------------------
# 4. label_corpus processes a whole cleaned corpus and tallies the
#    sentiment distribution — the weak-label view of public opinion.
stopwords = load_stopwords(DEMO / "stopwords.txt")
for topic_file in ("corpus_burgerhouse.jsonl", "corpus_espressobar.jsonl"):
    documents = clean_corpus(load_corpus(DEMO / topic_file), stopwords)
    labeled, counts = label_corpus(lexicon, documents)
    shares = {label.tag: count / len(labeled) for label, count in counts.items()}
    print(f"{topic_file}:")
    for tag, share in shares.items():
        print(f"  {tag:8s} {share:6.1%}")
