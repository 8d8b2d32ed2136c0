#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
The "plugin spec" for crownkit. Plugins contribute group families to the
catalog (e.g. "AGL1(5)") and may rewrite the list of loaded catalog entries.

See docs/plugin_examples for an example.
"""

import pluggy

hookspec = pluggy.HookspecMarker("crownkit")
hookimpl = pluggy.HookimplMarker("crownkit")


class CrownkitPluginSpec:
    """A hook specification namespace for crownkit."""

    @hookspec
    def catalog_families(self):
        """
        Return a dict mapping a family name to a builder. A builder receives
        the parsed arguments of "Name(arg, ...)" (ints, or nested builtin
        names as strings) and returns a tuple (degree, generators, tags)
        with generators given as 0-based image lists.

        The dicts of all plugins are merged; later plugins override earlier
        ones on name clashes.
        """

    @hookspec
    def catalog_postprocess(self, entries):
        """
        This hook receives the list of CatalogEntry objects after a catalog
        has been loaded and returns a (possibly modified) list.

        If multiple hooks exist, they will be chained, the output of
        each hook will be fed into the next one.
        """


# pluggy doesn't by default handle chaining the output of one plugin into
# another, so this is a small utility function to do this.
# this utility function will chain the result of each hook into the first
# argument of the next hook.
def chain_hooks(hook_name, value, *args, **kwargs):
    for impl in getattr(plugin_manager.hook, hook_name).get_hookimpls():
        fn = getattr(impl, 'function')
        value = fn(value, *args, **kwargs)
    return value


def collect_families():
    families = {}
    # pluggy returns results in LIFO registration order
    for result in reversed(plugin_manager.hook.catalog_families()):
        families.update(result or {})
    return families


# this plugin_manager is exported so the normal pluggy API can be used in
# addition to the utility functions above.
plugin_manager = pluggy.PluginManager("crownkit")
plugin_manager.add_hookspecs(CrownkitPluginSpec)
plugin_manager.load_setuptools_entrypoints("crownkit")
