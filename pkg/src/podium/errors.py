class EngineError(Exception):
    """Base class for all engine errors."""
