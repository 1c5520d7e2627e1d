"""Test that all modules can be imported correctly."""


class TestImports:
    """Test cases for module imports."""

    def test_model_imports(self):
        """Test that all model classes can be imported."""
        from src.models.binmatrix import BinMatrix, Decomposition
        from src.models.noise import McResult, NoiseModel, SweepReport
        from src.models.operator import DecodeResult, OpPair, Species
        from src.models.run_config import RunConfig
        from src.models.seed_code import SeedCode

        for cls in (BinMatrix, Decomposition, McResult, NoiseModel, SweepReport,
                    DecodeResult, OpPair, Species, RunConfig, SeedCode):
            assert cls is not None

    def test_library_imports(self):
        """Test that the algebra, code, decoding and simulation layers import."""
        from src.algebra import f2
        from src.codes import classical, hgp, oracles
        from src.decoding import reshape
        from src.simulation import invariants, sim

        for module in (f2, classical, hgp, oracles, reshape, invariants, sim):
            assert module is not None

    def test_package_imports(self):
        """Test that packages can be imported."""
        import src
        import src.interface
        import src.models
        import src.utils

        assert src is not None
        assert src.models is not None
        assert src.utils is not None
        assert src.interface is not None

    def test_full_integration(self):
        """Test that a code can be built and decoded end to end."""
        from src.codes.oracles import build_decoder_suite
        from src.decoding.reshape import decode_syndrome
        from src.models.binmatrix import BinMatrix
        from src.utils.families import build_family

        code = build_family("planar:3")
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        result = decode_syndrome(code, suite, BinMatrix.zeros(2, 3))
        assert result.correction.is_zero()
