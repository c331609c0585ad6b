"""Texture classification with wavelet-energy and GLCM-energy features."""
from ._backend import BACKEND
from .bench import BenchConfig, BenchReport, accuracy_experiment, emit_report, time_extraction
from .classify import (Extractor, FeatureDatabase, FeatureVector, Match, build_database, classify,
                       euclidean, subband_energy, wavelet_features)
from .glcm import Glcm, IndexedImage, compute_glcm, glcm_energy, glcm_features, quantize
from .perturb import hist_equalize, rotate, salt_pepper
from .raster import CorpusSpec, GrayImage, build_corpus, load_pgm, save_pgm, synth_texture
from .wavelet import (Decomposition, Subband, WaveletFilter, decompose, dwt1d, dwt2d, get_filter,
                      haar_matrix, idwt1d)

__version__ = "0.1.0"
