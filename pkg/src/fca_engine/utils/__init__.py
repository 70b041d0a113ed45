from fca_engine.utils.bitsets import indices_of, iter_bits, mask_of

__all__ = ["indices_of", "iter_bits", "mask_of"]
