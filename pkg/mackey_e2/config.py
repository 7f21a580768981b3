"""
Workspace configuration for the command-line interface and corpus driver.
"""

import os

from .errors import InputError
from .groups import DEFAULT_MAX_ORDER

CACHE_ENV = "MACKEY_E2_CACHE_DIR"
DEFAULT_MAX_P = 3


class WorkspaceConfig:
    """
    Configuration container for a workspace session.
    """

    def __init__(
        self,
        group_spec,
        max_order=DEFAULT_MAX_ORDER,
        seed=0,
        randomize_choices=False,
        output_dir=None,
        threads=1,
        cache_dir=None,
        max_p=DEFAULT_MAX_P,
        as_json=False,
    ):
        self.group_spec = (group_spec or "").strip()
        self.max_order = max_order
        self.seed = seed
        self.randomize_choices = randomize_choices
        self.output_dir = output_dir
        self.threads = threads
        self.cache_dir = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV) or None
        self.max_p = max_p
        self.as_json = as_json

    @property
    def choice_seed(self):
        """
        Seed for randomized subgroup representatives and base points, or None.
        """
        return self.seed if self.randomize_choices else None

    def validate(self):
        """
        Validate the configuration before building a workspace.
        """
        if not self.group_spec:
            raise InputError("A group spec is required (for example --group S3).")

        if self.max_order < 1:
            raise InputError("The order cap must be at least 1.")

        if self.threads < 1:
            raise InputError("Thread count must be at least 1.")

        if self.max_p < 0:
            raise InputError("--max-p must be non-negative.")

        if self.output_dir and os.path.exists(self.output_dir) and not os.path.isdir(self.output_dir):
            raise InputError(f"Output path is not a directory: {self.output_dir}")

        if self.cache_dir and os.path.exists(self.cache_dir) and not os.path.isdir(self.cache_dir):
            raise InputError(f"Cache path is not a directory: {self.cache_dir}")
