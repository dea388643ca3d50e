"""Token-level language identification for code-switched text.

Elman- and Jordan-type recurrent taggers with a supervised embedding layer,
fixed-width character n-gram features and an optional pretrained skip-gram
channel, plus the deterministic lexical baseline and evaluation metrics.
"""

from .baseline import LexiconBaseline, fit_baseline, predict_baseline
from .corpus import (
    CS6,
    LANGID,
    SCHEMES,
    Dataset,
    LabelScheme,
    Sentence,
    SynthLanguage,
    SynthSpec,
    Token,
    Vocab,
    build_vocab,
    parse_token_file,
    serialize_dataset,
    split_by_author,
    synth_corpus,
)
from .embeddings import (
    EmbeddingTable,
    PretrainedEmbeddings,
    SgnsParams,
    init_embedding,
    load_embeddings_text,
    lookup_concat,
    lookup_pretrained,
    save_embeddings_text,
    train_skipgram,
)
from .features import (
    NgramVocab,
    TokenFeatureIndices,
    build_ngram_vocab,
    char_ngrams,
    encode_position,
)
from .metrics import EvalReport, error_rate_reduction, evaluate
from .rnn import (
    ELMAN,
    JORDAN,
    Prediction,
    RnnConfig,
    RnnModel,
    RnnParams,
    bptt_sentence,
    forward_sentence,
    forward_token,
    gradient_check,
    init_params,
    load_model,
    save_model,
    sentence_loss,
    sgd_step,
    tag,
    train,
)

__version__ = "0.1.0"
