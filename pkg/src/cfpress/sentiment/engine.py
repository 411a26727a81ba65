"""Rule-based polarity scoring.

Implements the VADER scoring rules (Hutto & Gilbert 2014) over the packaged
lexicon: booster and dampener words, negation damping, ALL-CAPS emphasis,
"but" clause re-weighting, idiom overrides, punctuation emphasis, and the
bounded normalization of the summed valences. On top of that sit optional
flip rules that invert the lexicon sign of a token in report-style contexts,
e.g. "tested negative" describing a good outcome.

Scoring is pure: the lexicon and rules are immutable after construction and
sentences can be scored in parallel.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

from cfpress.errors import ConfigError
from cfpress.sentiment.lexicon import SentimentLexicon
from cfpress.sentiment.sentences import split_sentences

BOOST_STEP = 0.293
CAPS_BONUS = 0.733
NEGATION_FACTOR = -0.74
NEVER_EMPHASIS = 1.25
NORMALIZE_ALPHA = 15.0
EXCLAIM_STEP = 0.292
EXCLAIM_CAP = 4

NEGATIONS = frozenset([
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
    "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
    "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
])

BOOSTERS = {
    "absolutely": BOOST_STEP, "amazingly": BOOST_STEP, "awfully": BOOST_STEP,
    "completely": BOOST_STEP, "considerable": BOOST_STEP, "considerably": BOOST_STEP,
    "decidedly": BOOST_STEP, "deeply": BOOST_STEP, "effing": BOOST_STEP,
    "enormous": BOOST_STEP, "enormously": BOOST_STEP,
    "entirely": BOOST_STEP, "especially": BOOST_STEP, "exceptional": BOOST_STEP,
    "exceptionally": BOOST_STEP, "extreme": BOOST_STEP, "extremely": BOOST_STEP,
    "fabulously": BOOST_STEP, "flipping": BOOST_STEP, "flippin": BOOST_STEP,
    "frackin": BOOST_STEP, "fracking": BOOST_STEP,
    "fricking": BOOST_STEP, "frickin": BOOST_STEP, "frigging": BOOST_STEP,
    "friggin": BOOST_STEP, "fully": BOOST_STEP,
    "fuckin": BOOST_STEP, "fucking": BOOST_STEP, "fuggin": BOOST_STEP, "fugging": BOOST_STEP,
    "greatly": BOOST_STEP, "hella": BOOST_STEP, "highly": BOOST_STEP, "hugely": BOOST_STEP,
    "incredible": BOOST_STEP, "incredibly": BOOST_STEP, "intensely": BOOST_STEP,
    "major": BOOST_STEP, "majorly": BOOST_STEP, "more": BOOST_STEP, "most": BOOST_STEP,
    "particularly": BOOST_STEP,
    "purely": BOOST_STEP, "quite": BOOST_STEP, "really": BOOST_STEP, "remarkably": BOOST_STEP,
    "so": BOOST_STEP, "substantially": BOOST_STEP,
    "thoroughly": BOOST_STEP, "total": BOOST_STEP, "totally": BOOST_STEP,
    "tremendous": BOOST_STEP, "tremendously": BOOST_STEP,
    "uber": BOOST_STEP, "unbelievably": BOOST_STEP, "unusually": BOOST_STEP,
    "utter": BOOST_STEP, "utterly": BOOST_STEP,
    "very": BOOST_STEP,
    "almost": -BOOST_STEP, "barely": -BOOST_STEP, "hardly": -BOOST_STEP,
    "just enough": -BOOST_STEP,
    "kind of": -BOOST_STEP, "kinda": -BOOST_STEP, "kindof": -BOOST_STEP, "kind-of": -BOOST_STEP,
    "less": -BOOST_STEP, "little": -BOOST_STEP, "marginal": -BOOST_STEP, "marginally": -BOOST_STEP,
    "occasional": -BOOST_STEP, "occasionally": -BOOST_STEP, "partly": -BOOST_STEP,
    "scarce": -BOOST_STEP, "scarcely": -BOOST_STEP, "slight": -BOOST_STEP, "slightly": -BOOST_STEP,
    "somewhat": -BOOST_STEP,
    "sort of": -BOOST_STEP, "sorta": -BOOST_STEP, "sortof": -BOOST_STEP, "sort-of": -BOOST_STEP,
}

IDIOM_VALENCES = {
    "the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5, "bus stop": 0.0,
    "yeah right": -2, "kiss of death": -1.5, "to die for": 3,
    "beating heart": 3.1, "broken heart": -2.9,
}

DEFAULT_FLIP_TRIGGERS = frozenset({"test", "tested", "testing", "tests"})


@dataclass(frozen=True)
class FlipRule:
    """Invert the lexicon sign of `target` when a trigger token is nearby.

    `window` is a token radius: the rule fires when any trigger appears
    within `window` tokens on either side of the target.
    """

    target: str
    triggers: frozenset = DEFAULT_FLIP_TRIGGERS
    window: int = 2
    action: str = "negate"

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError("flip rule window must be >= 1")
        if self.action != "negate":
            raise ConfigError("only the 'negate' flip action is supported")
        object.__setattr__(self, "target", self.target.lower())
        object.__setattr__(self, "triggers", frozenset(t.lower() for t in self.triggers))


DEFAULT_FLIP_RULES = (
    FlipRule(target="positive"),
    FlipRule(target="negative"),
)


@dataclass(frozen=True)
class SentenceScore:
    """Compound polarity of one sentence plus the tokens a flip rule inverted."""

    text: str
    compound: float
    flipped_terms: tuple = ()


@dataclass(frozen=True)
class ArticleSentiment:
    """Per-sentence scores and their arithmetic mean for one article."""

    article_id: str
    sentence_scores: tuple
    mean_compound: float
    n_sentences: int


def scoring_tokens(text: str) -> list:
    """Whitespace tokens with edge punctuation removed.

    A token whose stripped form has two or fewer characters is kept verbatim
    so emoticons such as ":)" survive.
    """
    tokens = []
    for raw in text.split():
        stripped = raw.strip(string.punctuation)
        tokens.append(raw if len(stripped) <= 2 else stripped)
    return tokens


def _mixed_case(tokens) -> bool:
    """True when some but not all tokens are ALL CAPS."""
    upper = sum(1 for tok in tokens if tok.isupper())
    return 0 < len(tokens) - upper < len(tokens)


def _is_negator(token_lower: str) -> bool:
    return token_lower in NEGATIONS or "n't" in token_lower


def _modifier_scalar(token: str, valence: float, caps_mix: bool) -> float:
    """Boost or dampen contribution of a preceding modifier word."""
    low = token.lower()
    if low not in BOOSTERS:
        return 0.0
    scalar = BOOSTERS[low]
    if valence < 0:
        scalar = -scalar
    if token.isupper() and caps_mix:
        scalar = scalar + CAPS_BONUS if valence > 0 else scalar - CAPS_BONUS
    return scalar


def _negation_adjust(valence: float, lower, dist: int, i: int) -> float:
    """Dampen (or, for 'never so/this', emphasize) valence for negated contexts."""
    if dist == 0:
        if _is_negator(lower[i - 1]):
            valence *= NEGATION_FACTOR
    elif dist == 1:
        if lower[i - 2] == "never" and lower[i - 1] in ("so", "this"):
            valence *= NEVER_EMPHASIS
        elif lower[i - 2] == "without" and lower[i - 1] == "doubt":
            pass
        elif _is_negator(lower[i - 2]):
            valence *= NEGATION_FACTOR
    else:
        # the second disjunct deliberately ignores "never": this mirrors the
        # reference engine's operator grouping.
        if (lower[i - 3] == "never" and lower[i - 2] in ("so", "this")) \
                or lower[i - 1] in ("so", "this"):
            valence *= NEVER_EMPHASIS
        elif lower[i - 3] == "without" and (lower[i - 2] == "doubt" or lower[i - 1] == "doubt"):
            pass
        elif _is_negator(lower[i - 3]):
            valence *= NEGATION_FACTOR
    return valence


def _idiom_adjust(valence: float, lower, i: int) -> float:
    """Override valence for idioms around position i and add n-gram boosters."""
    onezero = "{0} {1}".format(lower[i - 1], lower[i])
    twoonezero = "{0} {1} {2}".format(lower[i - 2], lower[i - 1], lower[i])
    twoone = "{0} {1}".format(lower[i - 2], lower[i - 1])
    threetwoone = "{0} {1} {2}".format(lower[i - 3], lower[i - 2], lower[i - 1])
    threetwo = "{0} {1}".format(lower[i - 3], lower[i - 2])

    for seq in (onezero, twoonezero, twoone, threetwoone, threetwo):
        if seq in IDIOM_VALENCES:
            valence = IDIOM_VALENCES[seq]
            break

    if len(lower) - 1 > i:
        zeroone = "{0} {1}".format(lower[i], lower[i + 1])
        if zeroone in IDIOM_VALENCES:
            valence = IDIOM_VALENCES[zeroone]
    if len(lower) - 1 > i + 1:
        zeroonetwo = "{0} {1} {2}".format(lower[i], lower[i + 1], lower[i + 2])
        if zeroonetwo in IDIOM_VALENCES:
            valence = IDIOM_VALENCES[zeroonetwo]

    for gram in (threetwoone, threetwo, twoone):
        if gram in BOOSTERS:
            valence += BOOSTERS[gram]
    return valence


def _least_adjust(valence: float, lower, i: int, lexicon: SentimentLexicon) -> float:
    """Treat a preceding bare 'least' as negation, but not 'at least'/'very least'."""
    if i > 1 and lower[i - 1] == "least" and lower[i - 1] not in lexicon.entries:
        if lower[i - 2] != "at" and lower[i - 2] != "very":
            valence *= NEGATION_FACTOR
    elif i > 0 and lower[i - 1] == "least" and lower[i - 1] not in lexicon.entries:
        valence *= NEGATION_FACTOR
    return valence


def _but_rescale(lower, valences):
    """Halve valences before 'but' and amplify those after it.

    The in-place first-occurrence rewrite mirrors the reference engine, which
    locates each value with list.index while iterating.
    """
    if "but" in lower:
        bi = lower.index("but")
        for valence in valences:
            si = valences.index(valence)
            if si < bi:
                valences.pop(si)
                valences.insert(si, valence * 0.5)
            elif si > bi:
                valences.pop(si)
                valences.insert(si, valence * 1.5)
    return valences


def _exclaim_emphasis(text: str) -> float:
    return min(text.count("!"), EXCLAIM_CAP) * EXCLAIM_STEP


def _question_emphasis(text: str) -> float:
    count = text.count("?")
    if count <= 1:
        return 0.0
    if count <= 3:
        return count * 0.18
    return 0.96


def _squash(score: float) -> float:
    """Map an unbounded valence sum into [-1, 1]."""
    out = score / math.sqrt(score * score + NORMALIZE_ALPHA)
    return max(-1.0, min(1.0, out))


def _flip_positions(lower, rules, lexicon) -> set:
    """Token indexes whose lexicon valence a flip rule inverts; at most once each."""
    positions = set()
    for rule in rules or ():
        for i, tok in enumerate(lower):
            if tok != rule.target or tok not in lexicon.entries:
                continue
            left = max(0, i - rule.window)
            right = min(len(lower), i + rule.window + 1)
            if any(j != i and lower[j] in rule.triggers for j in range(left, right)):
                positions.add(i)
    return positions


def score_sentence(sentence: str, lexicon: SentimentLexicon,
                   rules=DEFAULT_FLIP_RULES) -> SentenceScore:
    """Compound polarity in [-1, 1] for one sentence.

    Unknown tokens contribute zero. Flip rules invert the matched token's
    lexicon valence before any modifier, negation, or summation step.
    """
    text = sentence.strip()
    tokens = scoring_tokens(text)
    lower = [tok.lower() for tok in tokens]
    caps_mix = _mixed_case(tokens)
    flips = _flip_positions(lower, rules, lexicon)

    valences = []
    flipped = []
    for i, token in enumerate(tokens):
        low = lower[i]
        if low in BOOSTERS:
            valences.append(0.0)
            continue
        if low == "kind" and i + 1 < len(tokens) and lower[i + 1] == "of":
            valences.append(0.0)
            continue
        if low not in lexicon.entries:
            valences.append(0.0)
            continue

        base = lexicon.entries[low]
        if i in flips:
            base = -base
            flipped.append((token, i))
        valence = base

        # a "no" right before a lexicon word acts as a negator, not a word
        if low == "no" and i != len(tokens) - 1 and lower[i + 1] in lexicon.entries:
            valence = 0.0
        if (i > 0 and lower[i - 1] == "no") \
                or (i > 1 and lower[i - 2] == "no") \
                or (i > 2 and lower[i - 3] == "no" and lower[i - 1] in ("or", "nor")):
            valence = base * NEGATION_FACTOR

        if token.isupper() and caps_mix:
            valence += CAPS_BONUS if valence > 0 else -CAPS_BONUS

        # look back up to three tokens for modifiers, negators, and idioms,
        # with the modifier effect decaying with distance
        for dist in range(3):
            j = i - (dist + 1)
            if j < 0:
                break
            if lower[j] in lexicon.entries:
                continue
            scalar = _modifier_scalar(tokens[j], valence, caps_mix)
            if scalar != 0.0:
                if dist == 1:
                    scalar *= 0.95
                elif dist == 2:
                    scalar *= 0.9
            valence += scalar
            valence = _negation_adjust(valence, lower, dist, i)
            if dist == 2:
                valence = _idiom_adjust(valence, lower, i)

        valence = _least_adjust(valence, lower, i, lexicon)
        valences.append(valence)

    valences = _but_rescale(lower, valences)

    if valences:
        total = float(sum(valences))
        emphasis = _exclaim_emphasis(text) + _question_emphasis(text)
        if total > 0:
            total += emphasis
        elif total < 0:
            total -= emphasis
        compound = _squash(total)
    else:
        compound = 0.0

    return SentenceScore(text=sentence, compound=compound, flipped_terms=tuple(flipped))


def score_article(article, lexicon: SentimentLexicon, rules=DEFAULT_FLIP_RULES,
                  skip_neutral: bool = False) -> ArticleSentiment:
    """Score every sentence of an article body and average the compounds.

    A zero-sentence body yields mean 0.0 with n_sentences 0. With
    `skip_neutral`, exactly-zero sentence compounds are left out of the mean
    (audit aid; the default includes them as zeros).
    """
    scores = tuple(score_sentence(s, lexicon, rules) for s in split_sentences(article.body))
    pool = [s.compound for s in scores]
    if skip_neutral:
        pool = [c for c in pool if c != 0.0]
    mean = sum(pool) / len(pool) if pool else 0.0
    return ArticleSentiment(
        article_id=article.id,
        sentence_scores=scores,
        mean_compound=mean,
        n_sentences=len(scores),
    )
