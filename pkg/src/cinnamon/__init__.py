"""Indoor localization, activity recognition and telemonitoring platform.

The package is organised around the data path of a smart-bulb home
installation: a deterministic simulator stands in for the hardware
(``cinnamon.simulate``), RSSI streams are turned into room-level positions
(``cinnamon.localization``), wearable inertial streams are classified into
activities (``cinnamon.har``), questionnaire scoring lives in
``cinnamon.assessment``, and the stateful patient-monitoring core plus its
HTTP facade live in ``cinnamon.telemonitor`` and ``cinnamon.api``.
"""

__version__ = "0.1.0"
