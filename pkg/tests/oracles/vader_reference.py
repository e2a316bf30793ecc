"""Independent reference implementation of the published rule-based
sentiment algorithm, used only as a test oracle.

This is a faithful transcription of the published reference flow,
including the special-case idiom handling and the index-based "but"
rescaling quirk that the production analyzer deliberately leaves out.
It shares only the lexicon *data* with the package; the code path is
fully separate so the two sides form an implementation/oracle pair.
"""

from __future__ import annotations

import math
import string

B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733
N_SCALAR = -0.74

NEGATE = [
    "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
    "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
    "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
    "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
    "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing",
    "nowhere", "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
    "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't", "without",
    "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
]

SPECIAL_CASE_IDIOMS = {
    "the shit": 3, "the bomb": 3, "bad ass": 1.5, "badass": 1.5,
    "yeah right": -2, "kiss of death": -1.5, "to die for": 3,
}

MULTIWORD_BOOSTERS = {"sort of": B_DECR, "kind of": B_DECR, "just enough": B_DECR}


def _make_booster_dict(boosters: set[str], dampeners: set[str]) -> dict[str, float]:
    table = {w: B_INCR for w in boosters}
    table.update({w: B_DECR for w in dampeners})
    table.update(MULTIWORD_BOOSTERS)
    return table


def negated(input_words, negators, include_nt=True):
    input_words = [str(w).lower() for w in input_words]
    for word in negators:
        if word in input_words:
            return True
    if include_nt:
        for word in input_words:
            if "n't" in word:
                return True
    return False


def normalize(score, alpha=15):
    norm_score = score / math.sqrt((score * score) + alpha)
    if norm_score < -1.0:
        return -1.0
    if norm_score > 1.0:
        return 1.0
    return norm_score


def allcap_differential(words):
    allcap_words = sum(1 for word in words if word.isupper())
    cap_differential = len(words) - allcap_words
    return 0 < cap_differential < len(words)


class ReferenceAnalyzer:
    def __init__(self, valences: dict[str, float], boosters: set[str], dampeners: set[str], negators: set[str]):
        self.lexicon = dict(valences)
        self.boosters = _make_booster_dict(boosters, dampeners)
        self.negators = set(negators)

    # -- tokenization ------------------------------------------------------
    @staticmethod
    def _strip_punc_if_word(token):
        stripped = token.strip(string.punctuation)
        if len(stripped) <= 2:
            return token
        return stripped

    def _words_and_emoticons(self, text):
        wes = text.split()
        return list(map(self._strip_punc_if_word, wes))

    # -- scoring -----------------------------------------------------------
    def scalar_inc_dec(self, word, valence, is_cap_diff):
        scalar = 0.0
        word_lower = word.lower()
        if word_lower in self.boosters:
            scalar = self.boosters[word_lower]
            if valence < 0:
                scalar *= -1
            if word.isupper() and is_cap_diff:
                if valence > 0:
                    scalar += C_INCR
                else:
                    scalar -= C_INCR
        return scalar

    def polarity_scores(self, text):
        words_and_emoticons = self._words_and_emoticons(text)
        is_cap_diff = allcap_differential(words_and_emoticons)
        sentiments = []
        for i, item in enumerate(words_and_emoticons):
            valence = 0
            if item.lower() in self.boosters:
                sentiments.append(valence)
                continue
            if (
                i < len(words_and_emoticons) - 1
                and item.lower() == "kind"
                and words_and_emoticons[i + 1].lower() == "of"
            ):
                sentiments.append(valence)
                continue
            sentiments = self.sentiment_valence(
                valence, words_and_emoticons, is_cap_diff, item, i, sentiments
            )
        sentiments = self._but_check(words_and_emoticons, sentiments)
        return self.score_valence(sentiments, text)

    def sentiment_valence(self, valence, words_and_emoticons, is_cap_diff, item, i, sentiments):
        item_lowercase = item.lower()
        if item_lowercase in self.lexicon:
            valence = self.lexicon[item_lowercase]
            if (
                item_lowercase == "no"
                and i != len(words_and_emoticons) - 1
                and words_and_emoticons[i + 1].lower() in self.lexicon
            ):
                valence = 0.0
            if (
                (i > 0 and words_and_emoticons[i - 1].lower() == "no")
                or (i > 1 and words_and_emoticons[i - 2].lower() == "no")
                or (
                    i > 2
                    and words_and_emoticons[i - 3].lower() == "no"
                    and words_and_emoticons[i - 1].lower() in ("or", "nor")
                )
            ):
                valence = self.lexicon[item_lowercase] * N_SCALAR
            if item.isupper() and is_cap_diff:
                if valence > 0:
                    valence += C_INCR
                else:
                    valence -= C_INCR
            for start_i in range(0, 3):
                if (
                    i > start_i
                    and words_and_emoticons[i - (start_i + 1)].lower() not in self.lexicon
                ):
                    s = self.scalar_inc_dec(
                        words_and_emoticons[i - (start_i + 1)], valence, is_cap_diff
                    )
                    if start_i == 1 and s != 0:
                        s = s * 0.95
                    if start_i == 2 and s != 0:
                        s = s * 0.9
                    valence = valence + s
                    valence = self._negation_check(valence, words_and_emoticons, start_i, i)
                    if start_i == 2:
                        valence = self._special_idioms_check(valence, words_and_emoticons, i)
            valence = self._least_check(valence, words_and_emoticons, i)
        sentiments.append(valence)
        return sentiments

    def _least_check(self, valence, words_and_emoticons, i):
        if (
            i > 1
            and words_and_emoticons[i - 1].lower() not in self.lexicon
            and words_and_emoticons[i - 1].lower() == "least"
        ):
            if (
                words_and_emoticons[i - 2].lower() != "at"
                and words_and_emoticons[i - 2].lower() != "very"
            ):
                valence = valence * N_SCALAR
        elif (
            i > 0
            and words_and_emoticons[i - 1].lower() not in self.lexicon
            and words_and_emoticons[i - 1].lower() == "least"
        ):
            valence = valence * N_SCALAR
        return valence

    @staticmethod
    def _but_check(words_and_emoticons, sentiments):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if "but" in words_and_emoticons_lower:
            bi = words_and_emoticons_lower.index("but")
            for sentiment in sentiments:
                si = sentiments.index(sentiment)
                if si < bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 0.5)
                elif si > bi:
                    sentiments.pop(si)
                    sentiments.insert(si, sentiment * 1.5)
        return sentiments

    def _special_idioms_check(self, valence, words_and_emoticons, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        onezero = "{0} {1}".format(words_and_emoticons_lower[i - 1], words_and_emoticons_lower[i])
        twoonezero = "{0} {1} {2}".format(
            words_and_emoticons_lower[i - 2],
            words_and_emoticons_lower[i - 1],
            words_and_emoticons_lower[i],
        )
        twoone = "{0} {1}".format(words_and_emoticons_lower[i - 2], words_and_emoticons_lower[i - 1])
        threetwoone = "{0} {1} {2}".format(
            words_and_emoticons_lower[i - 3],
            words_and_emoticons_lower[i - 2],
            words_and_emoticons_lower[i - 1],
        )
        threetwo = "{0} {1}".format(
            words_and_emoticons_lower[i - 3], words_and_emoticons_lower[i - 2]
        )
        sequences = [onezero, twoonezero, twoone, threetwoone, threetwo]
        for seq in sequences:
            if seq in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[seq]
                break
        if len(words_and_emoticons_lower) - 1 > i:
            zeroone = "{0} {1}".format(words_and_emoticons_lower[i], words_and_emoticons_lower[i + 1])
            if zeroone in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[zeroone]
        if len(words_and_emoticons_lower) - 1 > i + 1:
            zeroonetwo = "{0} {1} {2}".format(
                words_and_emoticons_lower[i],
                words_and_emoticons_lower[i + 1],
                words_and_emoticons_lower[i + 2],
            )
            if zeroonetwo in SPECIAL_CASE_IDIOMS:
                valence = SPECIAL_CASE_IDIOMS[zeroonetwo]
        n_grams = [threetwoone, threetwo, twoone]
        for n_gram in n_grams:
            if n_gram in self.boosters:
                valence = valence + self.boosters[n_gram]
        return valence

    def _negation_check(self, valence, words_and_emoticons, start_i, i):
        words_and_emoticons_lower = [str(w).lower() for w in words_and_emoticons]
        if start_i == 0:
            if negated([words_and_emoticons_lower[i - (start_i + 1)]], self.negators):
                valence = valence * N_SCALAR
        if start_i == 1:
            if words_and_emoticons_lower[i - 2] == "never" and words_and_emoticons_lower[i - 1] in (
                "so",
                "this",
            ):
                valence = valence * 1.25
            elif (
                words_and_emoticons_lower[i - 2] == "without"
                and words_and_emoticons_lower[i - 1] == "doubt"
            ):
                pass
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]], self.negators):
                valence = valence * N_SCALAR
        if start_i == 2:
            if words_and_emoticons_lower[i - 3] == "never" and (
                words_and_emoticons_lower[i - 2] in ("so", "this")
                or words_and_emoticons_lower[i - 1] in ("so", "this")
            ):
                valence = valence * 1.25
            elif words_and_emoticons_lower[i - 3] == "without" and "doubt" in (
                words_and_emoticons_lower[i - 2],
                words_and_emoticons_lower[i - 1],
            ):
                pass
            elif negated([words_and_emoticons_lower[i - (start_i + 1)]], self.negators):
                valence = valence * N_SCALAR
        return valence

    @staticmethod
    def _punctuation_emphasis(text):
        ep_count = min(text.count("!"), 4)
        ep_amplifier = ep_count * 0.292
        qm_count = text.count("?")
        qm_amplifier = 0
        if qm_count > 1:
            qm_amplifier = qm_count * 0.18 if qm_count <= 3 else 0.96
        return ep_amplifier + qm_amplifier

    @staticmethod
    def _sift_sentiment_scores(sentiments):
        pos_sum = 0.0
        neg_sum = 0.0
        neu_count = 0
        for sentiment_score in sentiments:
            if sentiment_score > 0:
                pos_sum += float(sentiment_score) + 1
            if sentiment_score < 0:
                neg_sum += float(sentiment_score) - 1
            if sentiment_score == 0:
                neu_count += 1
        return pos_sum, neg_sum, neu_count

    def score_valence(self, sentiments, text):
        if sentiments:
            sum_s = float(sum(sentiments))
            punct_emph_amplifier = self._punctuation_emphasis(text)
            if sum_s > 0:
                sum_s += punct_emph_amplifier
            elif sum_s < 0:
                sum_s -= punct_emph_amplifier
            compound = normalize(sum_s)
            pos_sum, neg_sum, neu_count = self._sift_sentiment_scores(sentiments)
            if pos_sum > math.fabs(neg_sum):
                pos_sum += punct_emph_amplifier
            elif pos_sum < math.fabs(neg_sum):
                neg_sum -= punct_emph_amplifier
            total = pos_sum + math.fabs(neg_sum) + neu_count
            pos = math.fabs(pos_sum / total)
            neg = math.fabs(neg_sum / total)
            neu = math.fabs(neu_count / total)
        else:
            compound = 0.0
            pos = 0.0
            neg = 0.0
            neu = 0.0
        return {
            "neg": round(neg, 3),
            "neu": round(neu, 3),
            "pos": round(pos, 3),
            "compound": round(compound, 4),
        }


def analyzer_from_package_data() -> ReferenceAnalyzer:
    """Build the oracle from the same data files the package ships."""
    from stancecascade.sentiment import default_sentiment_lexicon

    lex = default_sentiment_lexicon()
    boosters = {w for w, v in lex.boosters.items() if v > 0}
    dampeners = {w for w, v in lex.boosters.items() if v < 0}
    return ReferenceAnalyzer(lex.valences, boosters, dampeners, set(lex.negators))
