from __future__ import annotations

DEFAULT_MAX_PERTURB_ROUNDS = 32
DEFAULT_CACHE_SIZE = 128
DOCUMENT_VERSION = 1
VERSION = "0.1.0"


class BaseClient:
    def __init__(
        self,
        *,
        max_perturb_rounds: int = DEFAULT_MAX_PERTURB_ROUNDS,
        cache_size: int = DEFAULT_CACHE_SIZE,
    ):
        # Defaults kick in here if you don't pass anything
        self._max_perturb_rounds = self._check_positive("max_perturb_rounds", max_perturb_rounds, minimum=0)
        self._cache_size = self._check_positive("cache_size", cache_size, minimum=1)

    @staticmethod
    def _check_positive(name: str, value: int, *, minimum: int) -> int:
        value = int(value)
        if value < minimum:
            raise ValueError(f"{name} must be >= {minimum}, got {value}")
        return value

    @property
    def max_perturb_rounds(self) -> int:
        return self._max_perturb_rounds

    @max_perturb_rounds.setter
    def max_perturb_rounds(self, rounds: int) -> None:
        self._max_perturb_rounds = self._check_positive("max_perturb_rounds", rounds, minimum=0)

    @property
    def cache_size(self) -> int:
        return self._cache_size


class CrossCrit(BaseClient):
    """Entry point: one namespace per pipeline stage.

    >>> client = CrossCrit()
    >>> report = client.graphs.validate(g, (0, 1))
    >>> cert = client.synth.synthesize(g, (0, 1))
    >>> client.certify.critical(cert).cr_value
    """

    def __init__(
        self,
        *,
        max_perturb_rounds: int = DEFAULT_MAX_PERTURB_ROUNDS,
        cache_size: int = DEFAULT_CACHE_SIZE,
    ):
        super().__init__(max_perturb_rounds=max_perturb_rounds, cache_size=cache_size)
        # attach resource namespaces
        from .resources.balance import BalanceResource
        from .resources.certify import CertifyResource
        from .resources.embedding import EmbeddingResource
        from .resources.graphs import GraphsResource
        from .resources.synthesis import SynthesisResource

        self.graphs = GraphsResource(self)
        self.embedding = EmbeddingResource(self)
        self.balance = BalanceResource(self)
        self.synth = SynthesisResource(self)
        self.certify = CertifyResource(self)

    def clear_caches(self) -> None:
        for resource in (self.graphs, self.embedding, self.balance, self.synth, self.certify):
            resource.clear_cache()
