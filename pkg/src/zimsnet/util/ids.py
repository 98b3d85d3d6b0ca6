from __future__ import annotations

import uuid


def new_run_id() -> str:
    """Generate a run identifier for manifests (UUID4 string)."""
    return str(uuid.uuid4())
