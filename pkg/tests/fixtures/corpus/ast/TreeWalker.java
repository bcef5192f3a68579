package org.eclipse.jdt.core.dom;

/**
 * Utility that walks the dom tree of every file in the workspace for the
 * batch tools. The refactoring tool, the builder, the formatter and the
 * search engine each drive their walks through this walker, so the
 * duplicated bookkeeping, the boilerplate and the scaffolding of a
 * workspace walk stay in one place instead of being copied into every
 * tool.
 */
public class TreeWalker {

    private int fFileCount;

    public void walkWorkspace() {
        // walks every file of the workspace; the slow and brittle part is
        // the duplicated bookkeeping per tool, not the walk itself
    }

    public void walkFile(Object file) {
        fFileCount++;
        // walks the tree of one file for the refactoring tool, the
        // builder, the formatter and the search engine
    }

    public int getFileCount() {
        return fFileCount;
    }

    public void resetScaffolding() {
        // clears the per walk scaffolding and bookkeeping
        fFileCount = 0;
    }
}
