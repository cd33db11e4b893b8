from contextvars import ContextVar, Token
from typing import Any, Dict, List, Optional

from loguru import logger

logger.disable("heatvalve")


class SweepContextVar:
    """A context variable whose scalar value is attached to every JSON log line."""

    registry: List["SweepContextVar"] = []

    def __init__(self, name: str) -> None:
        self.name = name
        self._var: ContextVar[Any] = ContextVar(name, default=None)
        self._last_token: Optional[Token] = None
        SweepContextVar.registry.append(self)

    def set(self, value: Any) -> Token:
        self._last_token = self._var.set(value)
        return self._last_token

    def reset(self, token: Optional[Token] = None) -> None:
        """Restores the previous value; without a token, undoes the last `set` in this context."""
        token = token or self._last_token
        if token is None or token.var is not self._var:
            return
        try:
            self._var.reset(token)
        except (RuntimeError, ValueError):
            # token was created in another context (e.g. a worker thread)
            self._var.set(None)
        self._last_token = None

    @property
    def value(self) -> Any:
        return self._var.get()

    @classmethod
    def snapshot(cls) -> Dict[str, Any]:
        return {
            var.name: var.value
            for var in cls.registry
            if isinstance(var.value, (str, int, float))
        }


sweep_id = SweepContextVar("sweep_id")
flux_index = SweepContextVar("flux_index")
get_sweep_context = SweepContextVar.snapshot
