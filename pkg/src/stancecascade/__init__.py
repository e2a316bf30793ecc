"""Cascaded, cost-sensitive stance classification of documents toward claims.

Three binary stages: relevance (linear SVM over overlap features),
neutral-vs-stance (two-branch text CNN with sentiment merge), and
agree-vs-disagree (linear SVM over sentiment, category-lexicon and
refuting-word features).
"""

__version__ = "0.1.0"

from .corpus import Corpus, Instance, Stage, StanceLabel, load_corpus  # noqa: F401
from .pipeline import PipelineModel, evaluate, predict, train_pipeline  # noqa: F401
