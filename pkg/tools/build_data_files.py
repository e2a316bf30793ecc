#!/usr/bin/env python3
"""Regenerate the lexicon data files bundled under stancecascade/data.

Run from the repository root:  python3 tools/build_data_files.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from stancecascade.porter import stem  # noqa: E402

DATA = ROOT / "src" / "stancecascade" / "data"

STOPWORDS = """
a about above after again against all also although am among an and any are
around as at be became because become been before being below between both
but by came can cannot come could did do does doing down during each few for
from further get got had has have having he her here hers herself him himself
his how i if in into is it its itself just may me might more most much must
my myself no nor not now of off on once only or other our ours ourselves out
over own same shall she should so some such than that the their theirs them
themselves then there these they this those through to too under until up
upon very was we were what when where which while who whom why will with
would you your yours yourself yourselves
""".split()

BOOSTERS = """
absolutely amazingly awfully completely considerably decidedly deeply
enormously entirely especially exceptionally extremely fabulously fully
greatly highly hugely incredibly intensely majorly more most particularly
purely quite really remarkably so substantially thoroughly totally
tremendously uber unbelievably unusually utterly very
""".split()

DAMPENERS = """
almost barely hardly kinda kindof kind-of less little marginally occasionally
partly scarcely slightly somewhat sorta sortof sort-of
""".split()

NEGATORS = """
aint arent cannot cant couldnt darent didnt doesnt ain't aren't can't couldn't
daren't didn't doesn't dont hadnt hasnt havent isnt mightnt mustnt neither
don't hadn't hasn't haven't isn't mightn't mustn't neednt needn't never none
nope nor not nothing nowhere oughtnt shant shouldnt uhuh wasnt werent oughtn't
shan't shouldn't uh-uh wasn't weren't without wont wouldnt won't wouldn't
rarely seldom despite
""".split()

# token -> valence on the standard [-4, 4] intensity scale
SENTIMENT = {
    # strong positive
    "best": 3.2, "love": 3.2, "awesome": 3.1, "great": 3.1, "wins": 2.9,
    "victory": 2.9, "loved": 2.9, "champion": 2.9, "beautiful": 2.9,
    "amazing": 2.8, "brilliant": 2.8, "win": 2.8, "winner": 2.8, "joy": 2.8,
    "excellent": 2.7, "wonderful": 2.7, "perfect": 2.7, "happy": 2.7,
    "won": 2.7, "success": 2.7, "celebrate": 2.7, "successful": 2.8,
    "happiness": 2.6, "praise": 2.6, "celebrated": 2.6, "praised": 2.5,
    "award": 2.5, "peace": 2.5, "justice": 2.4, "true": 2.4, "strong": 2.3,
    "trust": 2.3, "positive": 2.3, "honest": 2.3, "impressive": 2.3,
    "freedom": 2.3, "awarded": 2.2, "confident": 2.2, "truth": 2.2,
    "wise": 2.2, "save": 2.2, "trusted": 2.2, "correct": 2.3, "saved": 2.1,
    "popular": 2.1, "healthy": 2.1, "effective": 2.1, "glad": 2.0,
    "benefit": 2.0, "hopeful": 2.0, "rich": 2.0, "reliable": 2.0,
    "rescued": 2.0, "welcome": 2.0, "improved": 2.0, "good": 1.9, "hope": 1.9,
    "better": 1.9, "safe": 1.9, "approve": 1.9, "fair": 1.9, "smart": 1.9,
    "thank": 1.9, "thanks": 1.9, "rescue": 1.9, "improve": 1.9,
    "promising": 1.9, "innovative": 1.9, "relief": 1.9, "remarkable": 1.9,
    "liked": 1.8, "accurate": 1.8, "approval": 1.8, "endorse": 1.8, "free": 1.8,
    "improvement": 1.8, "efficient": 1.8, "support": 1.7, "supports": 1.7,
    "supported": 1.7, "genuine": 1.7, "famous": 1.7, "protect": 1.7,
    "recovery": 1.7, "yes": 1.7, "right": 1.6, "clear": 1.6, "gain": 1.6,
    "gains": 1.6, "credible": 1.6, "verified": 1.6, "protected": 1.6,
    "alive": 1.6, "growth": 1.6, "like": 1.5, "agree": 1.5, "agrees": 1.5,
    "proven": 1.5, "valid": 1.5, "agreed": 1.4, "verify": 1.4, "verifies": 1.4,
    "legitimate": 1.4, "confirmed": 1.3, "confirms": 1.2, "confirm": 1.2,
    "sure": 1.3, "survived": 1.3, "calm": 1.3, "proof": 1.1, "survivor": 1.1,
    "interesting": 1.7, "ok": 0.9, "okay": 0.9, "fine": 0.8,
    # strong negative
    "kill": -3.7, "murder": -3.5, "murdered": -3.4, "killed": -3.4,
    "terrorist": -3.3, "killing": -3.3, "dead": -3.3, "worst": -3.1,
    "terror": -3.1, "disaster": -3.1, "catastrophe": -3.0, "tragedy": -3.0,
    "death": -2.9, "die": -2.9, "died": -2.9, "war": -2.9, "tragic": -2.9,
    "liar": -2.9, "corrupt": -2.9, "bomb": -2.8, "dies": -2.8, "hate": -2.7,
    "anger": -2.7, "furious": -2.7, "corruption": -2.7, "destroy": -2.7,
    "hated": -2.6, "fraud": -2.6, "criminal": -2.6, "guilty": -2.6,
    "destroyed": -2.6, "bad": -2.5, "crisis": -2.5, "crime": -2.5,
    "harm": -2.5, "fail": -2.5, "fraudulent": -2.5, "horrible": -2.5,
    "failure": -2.5, "stupid": -2.4, "danger": -2.4, "dangerous": -2.4,
    "lie": -2.4, "panic": -2.4, "poverty": -2.4, "toxic": -2.4, "lied": -2.3,
    "lying": -2.3, "angry": -2.3, "pain": -2.3, "idiot": -2.3, "failed": -2.3,
    "suffer": -2.3, "disease": -2.3, "prison": -2.3, "suffering": -2.4,
    "fear": -2.2, "scared": -2.2, "scary": -2.2, "lies": -2.2, "scam": -2.2,
    "damage": -2.2, "ugly": -2.2, "painful": -2.2, "shame": -2.1,
    "scandal": -2.2, "jail": -2.2, "illegal": -2.2, "fails": -2.2,
    "terrible": -2.1, "wrong": -2.1, "sad": -2.1, "fake": -2.1, "attack": -2.1,
    "poor": -2.1, "worse": -2.1, "sick": -2.0, "afraid": -2.0, "hurt": -2.0,
    "awful": -2.0, "faked": -2.0, "attacked": -2.0, "loss": -2.0,
    "damaged": -2.0, "outrage": -2.3, "outraged": -2.2, "hoax": -1.9,
    "bogus": -1.9, "threat": -1.9, "lose": -1.9, "trouble": -1.9, "weak": -1.9,
    "blame": -1.9, "attacks": -1.9, "illness": -1.9, "injured": -1.9,
    "injury": -1.9, "arrested": -1.9, "victims": -1.9, "fool": -1.9,
    "mislead": -1.8, "untrue": -1.8, "threats": -1.8, "threatened": -1.8,
    "victim": -1.8, "dirty": -1.8, "blamed": -1.8, "arrest": -1.8,
    "banned": -1.8, "fabricated": -1.8, "unhappy": -1.8, "sadly": -1.8,
    "misleading": -1.9, "problem": -1.7, "problems": -1.7, "mistake": -1.7,
    "lost": -1.7, "nonsense": -1.7, "rejected": -1.7, "dislike": -1.6,
    "worried": -1.6, "worry": -1.6, "error": -1.6, "errors": -1.6,
    "reject": -1.6, "ridiculous": -1.6, "falsely": -1.6, "ban": -1.6,
    "false": -1.5, "doubt": -1.5, "worries": -1.5, "suspicious": -1.5,
    "accuse": -1.5, "incorrect": -1.5, "baseless": -1.5, "absurd": -1.5,
    "mistaken": -1.5, "rejects": -1.5, "unfounded": -1.4, "doubts": -1.4,
    "doubtful": -1.4, "dubious": -1.4, "disagree": -1.4, "anxious": -1.4,
    "accused": -1.4, "denied": -1.3, "disagrees": -1.3, "disagreed": -1.3,
    "debunked": -1.3, "contradict": -1.3, "dispute": -1.3, "dismissed": -1.3,
    "denies": -1.2, "debunk": -1.2, "refuted": -1.2, "disputed": -1.2,
    "contradicts": -1.2, "denying": -1.2, "no": -1.2, "deny": -1.1,
    "refute": -1.1, "refutes": -1.1, "dismiss": -1.1, "suspect": -1.0,
    "rumor": -0.9, "rumors": -0.9, "protest": -0.8, "apology": -0.2,
    "alarm": -1.4, "alarming": -1.7, "concern": -1.0, "concerns": -1.0,
    "concerned": -1.1, "warned": -1.2, "warning": -1.4, "warn": -1.2,
    "crash": -2.2, "crashed": -2.1, "collapse": -2.0, "collapsed": -1.9,
    "explosion": -2.3, "fire": -1.6, "flood": -1.8, "storm": -1.3,
    "virus": -1.9, "infection": -1.9, "outbreak": -1.8, "epidemic": -2.1,
    "shot": -1.9, "shooting": -2.3, "gun": -1.4, "hostage": -2.4,
    "kidnapped": -2.6, "stolen": -2.0, "steal": -2.1, "theft": -2.0,
    "abuse": -2.8, "abused": -2.6, "violence": -2.6, "violent": -2.4,
    "racist": -2.8, "sexist": -2.4, "cruel": -2.5, "brutal": -2.5,
}

# 16 categories of trigger words; file ships their stemmed forms
CATEGORIES = {
    "analytical_thinking": """
        think thinking analyze analysis reason reasoning evidence conclude
        conclusion examine research study studies logic logical therefore
        hence thus determine investigate investigation method data finding
        findings result results indicate suggest measure theory
    """,
    "clout": """
        we our ours us everyone certainly clearly obviously definitely
        undoubtedly assert insist lead leader leaders expert experts
        authority official officials confident command declare announce
        state statement
    """,
    "authentic": """
        honest honestly true truth truly real really actually genuine
        genuinely admit admits admitted confess frankly sincere sincerely
        authentic openly candid
    """,
    "emotional_tone": """
        happy sad angry joy fear love hate worry excited upset glad
        miserable cheerful gloomy delighted furious thrilled depressed
        pleased annoyed
    """,
    "conjugation": """
        and but or because although though while whereas however moreover
        since unless whether also besides furthermore meanwhile nevertheless
        nonetheless
    """,
    "negation": """
        no not never none cannot nothing neither nor without nobody nowhere
        isn't aren't wasn't weren't don't doesn't didn't won't wouldn't
        can't couldn't shouldn't hasn't haven't hadn't
    """,
    "comparison_words": """
        than more less most least bigger smaller better worse best worst
        greater fewer similar different compare compared comparison like
        unlike same
    """,
    "affective_processes": """
        feel feels feeling feelings emotion emotions emotional passion
        passionate mood cry cried laugh laughed smile smiled hurt ache
        heart
    """,
    "positive_emotions": """
        good great happy love loves nice wonderful excellent amazing
        success successful win wins benefit beautiful joy hope hopeful
        proud delight delighted glad thankful
    """,
    "negative_emotions": """
        bad wrong hate hates terrible awful horrible fail failed failure
        loss problem problems hurt ugly nasty worthless miserable painful
        grim dreadful
    """,
    "anxiety": """
        worry worried worries fear feared fearful afraid nervous anxious
        anxiety panic scare scared threat threatened risk risky unsafe
        alarm alarmed
    """,
    "anger": """
        angry anger rage furious mad outrage outraged attack attacks blame
        blamed insult insulted hostile hate fury resent bitter irritated
        enraged
    """,
    "sadness": """
        sad sadness grief grieve cry crying sorrow mourn mourning depress
        depressed depressing tragic tragedy miss missed lonely heartbroken
        tears
    """,
    "differentiation": """
        but except however distinct differ difference different unlike
        contrast although instead rather otherwise whereas alternatively
        disagree distinguish
    """,
    "affiliation": """
        ally allies friend friends family families together community
        communities team teams partner partners social join joined union
        member members
    """,
    "achieve": """
        success succeed achieve achieved achievement win won accomplish
        accomplished attain earn earned goal goals improve improved
        progress effort efforts striving
    """,
}

# the published baseline's refutation indicator terms
REFUTING = [
    "fake", "fraud", "hoax", "false", "deny", "denies", "not", "despite",
    "nope", "doubt", "doubts", "bogus", "debunk", "pranks", "retract",
]


def write_lines(path: Path, lines) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(lines)} lines)")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    write_lines(DATA / "stopwords.txt", sorted(set(STOPWORDS)))
    write_lines(DATA / "boosters.txt", sorted(set(BOOSTERS)))
    write_lines(DATA / "dampeners.txt", sorted(set(DAMPENERS)))
    write_lines(DATA / "negators.txt", sorted(set(NEGATORS)))
    write_lines(
        DATA / "sentiment_lexicon.txt",
        [f"{token}\t{value}" for token, value in sorted(SENTIMENT.items())],
    )
    write_lines(DATA / "refuting_words.txt", REFUTING)

    lines = []
    for name, words in CATEGORIES.items():
        lines.append(f"[{name}]")
        stems = sorted({stem(w.lower()) for w in words.split()})
        lines.extend(stems)
        lines.append("")
    write_lines(DATA / "category_lexicon.txt", lines)


if __name__ == "__main__":
    main()
